//! Row normalization and dense cosine-similarity construction.
//!
//! Zero-norm rows have no direction, so cosine similarity is undefined for
//! them. They are flagged rather than rejected and treated as similar to
//! nothing, themselves included: a content-free token neither covers nor is
//! coverable.

use crate::model::{SimilarityMatrix, TokenMatrix};

/// Rows with Euclidean norm below this are treated as zero vectors.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-12;

/// A token matrix whose nonzero rows have unit Euclidean norm. Rows whose
/// original norm fell below the zero threshold are all-zero and flagged.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitTokenMatrix {
    n: usize,
    d: usize,
    data: Vec<f64>,
    zero_rows: Vec<bool>,
}

impl UnitTokenMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.d..(i + 1) * self.d]
    }

    pub fn is_zero_row(&self, i: usize) -> bool {
        self.zero_rows[i]
    }

    pub fn zero_rows(&self) -> &[bool] {
        &self.zero_rows
    }
}

/// Scales each row to unit norm. Rows with norm below `zero_threshold`
/// become all-zero and are flagged instead of rejected.
pub fn normalize_rows(tokens: &TokenMatrix, zero_threshold: f64) -> UnitTokenMatrix {
    let (n, d) = (tokens.n(), tokens.d());
    let mut data = vec![0.0; n * d];
    let mut zero_rows = vec![false; n];
    for i in 0..n {
        let row = tokens.row(i);
        let norm = row.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < zero_threshold {
            zero_rows[i] = true;
            continue;
        }
        let out = &mut data[i * d..(i + 1) * d];
        for (o, x) in out.iter_mut().zip(row) {
            *o = x / norm;
        }
    }
    UnitTokenMatrix {
        n,
        d,
        data,
        zero_rows,
    }
}

/// Builds the dense cosine-similarity matrix from unit rows.
///
/// Each unordered pair is computed once and mirrored, so the result is
/// exactly symmetric. Entries are clamped into [-1, 1] after the dot
/// product. Flagged zero rows get similarity 0 everywhere, including the
/// diagonal; non-flagged diagonal entries are exactly 1.
pub fn cosine_similarity_matrix(unit: &UnitTokenMatrix) -> SimilarityMatrix {
    let n = unit.n();
    let mut values = vec![0.0; n * n];
    for u in 0..n {
        if unit.is_zero_row(u) {
            continue;
        }
        values[u * n + u] = 1.0;
        let row_u = unit.row(u);
        for v in (u + 1)..n {
            if unit.is_zero_row(v) {
                continue;
            }
            let dot: f64 = row_u.iter().zip(unit.row(v)).map(|(a, b)| a * b).sum();
            let s = dot.clamp(-1.0, 1.0);
            values[u * n + v] = s;
            values[v * n + u] = s;
        }
    }
    SimilarityMatrix::from_raw(n, values)
}

/// Convenience: normalize with the default zero threshold and build the
/// similarity matrix in one call.
pub fn similarity_from_tokens(tokens: &TokenMatrix) -> SimilarityMatrix {
    cosine_similarity_matrix(&normalize_rows(tokens, DEFAULT_ZERO_THRESHOLD))
}
