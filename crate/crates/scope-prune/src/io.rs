//! On-disk formats: token bundles (manifest + little-endian f32 binaries),
//! selection files (JSON), and a small CSV fixture importer.
//!
//! Storage is 32-bit little-endian regardless of host; values are widened
//! to f64 on load. Loads reject malformed data instead of repairing it.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::model::{ModelError, SaliencyVector, SelectionResult, TokenMatrix};

pub const BUNDLE_FORMAT_VERSION: u32 = 1;
pub const SELECTION_FORMAT_VERSION: u32 = 1;
const DTYPE_F32LE: &str = "f32le";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("ManifestParseError: {0}")]
    ManifestParse(String),
    #[error("FileMissing: {0}")]
    FileMissing(PathBuf),
    #[error("SizeMismatch: {path} has {actual} bytes, expected {expected}")]
    SizeMismatch {
        path: PathBuf,
        expected: usize,
        actual: usize,
    },
    #[error("ChecksumMismatch: {0} does not match its recorded sha256")]
    ChecksumMismatch(PathBuf),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("IoError: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Manifest describing a token bundle on disk. Paths are relative to the
/// manifest file's directory.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BundleManifest {
    pub format_version: u32,
    pub n: usize,
    pub d: usize,
    pub dtype: String,
    pub embeddings_file: String,
    pub saliency_file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<BTreeMap<String, String>>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex_encode(&hasher.finalize())
}

fn hex_encode(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn f32le_bytes(values: &[f64]) -> Vec<u8> {
    let mut out = Vec::with_capacity(values.len() * 4);
    for &v in values {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    out
}

fn read_f32le(path: &Path, expected_count: usize) -> Result<Vec<f64>, IoError> {
    if !path.exists() {
        return Err(IoError::FileMissing(path.to_path_buf()));
    }
    let bytes = fs::read(path)?;
    if bytes.len() != expected_count * 4 {
        return Err(IoError::SizeMismatch {
            path: path.to_path_buf(),
            expected: expected_count * 4,
            actual: bytes.len(),
        });
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect())
}

/// Writes `manifest.json`, `embeddings.bin`, and `saliency.bin` into
/// `directory` (created if absent) and returns the manifest path. The
/// manifest metadata records sha256 checksums of both binaries.
pub fn save_bundle(
    tokens: &TokenMatrix,
    saliency: &SaliencyVector,
    directory: &Path,
) -> Result<PathBuf, IoError> {
    crate::model::validate_bundle(tokens, saliency)?;
    fs::create_dir_all(directory)?;
    let emb_bytes = f32le_bytes(tokens.data());
    let sal_bytes = f32le_bytes(saliency.scores());
    fs::write(directory.join("embeddings.bin"), &emb_bytes)?;
    fs::write(directory.join("saliency.bin"), &sal_bytes)?;

    let mut metadata = BTreeMap::new();
    metadata.insert("embeddings_sha256".to_string(), sha256_hex(&emb_bytes));
    metadata.insert("saliency_sha256".to_string(), sha256_hex(&sal_bytes));

    let manifest = BundleManifest {
        format_version: BUNDLE_FORMAT_VERSION,
        n: tokens.n(),
        d: tokens.d(),
        dtype: DTYPE_F32LE.to_string(),
        embeddings_file: "embeddings.bin".to_string(),
        saliency_file: "saliency.bin".to_string(),
        metadata: Some(metadata),
    };
    let manifest_path = directory.join("manifest.json");
    fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)?;
    Ok(manifest_path)
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse(e.to_string())
    }
}

/// Loads a bundle from its manifest. Checksums recorded in the metadata are
/// verified; dimension and dtype gates are enforced before validation.
pub fn load_bundle(manifest_path: &Path) -> Result<(TokenMatrix, SaliencyVector), IoError> {
    if !manifest_path.exists() {
        return Err(IoError::FileMissing(manifest_path.to_path_buf()));
    }
    let text = fs::read_to_string(manifest_path)?;
    let manifest: BundleManifest =
        serde_json::from_str(&text).map_err(|e| IoError::ManifestParse(e.to_string()))?;
    if manifest.format_version != BUNDLE_FORMAT_VERSION {
        return Err(IoError::ManifestParse(format!(
            "unsupported format_version {}",
            manifest.format_version
        )));
    }
    if manifest.dtype != DTYPE_F32LE {
        return Err(IoError::ManifestParse(format!(
            "unsupported dtype {:?} (v1 supports only \"f32le\")",
            manifest.dtype
        )));
    }
    if manifest.n == 0 || manifest.d == 0 {
        return Err(IoError::ManifestParse("n and d must be >= 1".to_string()));
    }
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let emb_path = base.join(&manifest.embeddings_file);
    let sal_path = base.join(&manifest.saliency_file);

    if let Some(meta) = &manifest.metadata {
        for (key, path) in [
            ("embeddings_sha256", &emb_path),
            ("saliency_sha256", &sal_path),
        ] {
            if let Some(recorded) = meta.get(key) {
                if !path.exists() {
                    return Err(IoError::FileMissing(path.clone()));
                }
                let actual = sha256_hex(&fs::read(path)?);
                if &actual != recorded {
                    return Err(IoError::ChecksumMismatch(path.clone()));
                }
            }
        }
    }

    let embeddings = read_f32le(&emb_path, manifest.n * manifest.d)?;
    let scores = read_f32le(&sal_path, manifest.n)?;
    let tokens = TokenMatrix::new(manifest.n, manifest.d, embeddings)?;
    let saliency = SaliencyVector::new(scores)?;
    crate::model::validate_bundle(&tokens, &saliency)?;
    Ok((tokens, saliency))
}

/// Wire schema for selection files; validated into [`SelectionResult`] on
/// load.
#[derive(Serialize, Deserialize)]
struct SelectionFile {
    format_version: u32,
    selected: Vec<usize>,
    step_gains: Vec<f64>,
    final_coverage: Vec<f64>,
}

/// Writes a selection result as pretty-printed JSON.
pub fn save_selection(result: &SelectionResult, path: &Path) -> Result<(), IoError> {
    let file = SelectionFile {
        format_version: SELECTION_FORMAT_VERSION,
        selected: result.selected().to_vec(),
        step_gains: result.step_gains().to_vec(),
        final_coverage: result.final_coverage().to_vec(),
    };
    fs::write(path, serde_json::to_string_pretty(&file)?)?;
    Ok(())
}

/// Loads and re-validates a selection file. Files violating the selection
/// invariants (duplicate indices, empty selection, coverage outside [0, 1])
/// are rejected as parse errors.
pub fn load_selection(path: &Path) -> Result<SelectionResult, IoError> {
    if !path.exists() {
        return Err(IoError::FileMissing(path.to_path_buf()));
    }
    let text = fs::read_to_string(path)?;
    let file: SelectionFile =
        serde_json::from_str(&text).map_err(|e| IoError::Parse(e.to_string()))?;
    if file.format_version != SELECTION_FORMAT_VERSION {
        return Err(IoError::Parse(format!(
            "unsupported selection format_version {}",
            file.format_version
        )));
    }
    SelectionResult::new(file.selected, file.step_gains, file.final_coverage)
        .map_err(|e| IoError::Parse(e.to_string()))
}

/// Imports a hand-written CSV fixture: header `d0,d1,...,d{d-1},saliency`,
/// one row per token. Intended for small reviewable test inputs.
pub fn load_bundle_csv(path: &Path) -> Result<(TokenMatrix, SaliencyVector), IoError> {
    if !path.exists() {
        return Err(IoError::FileMissing(path.to_path_buf()));
    }
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| IoError::Parse("empty CSV file".to_string()))?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    if columns.last() != Some(&"saliency") {
        return Err(IoError::Parse(
            "CSV header must end with a `saliency` column".to_string(),
        ));
    }
    let d = columns.len() - 1;
    for (i, col) in columns[..d].iter().enumerate() {
        if *col != format!("d{i}") {
            return Err(IoError::Parse(format!(
                "CSV header column {i} must be `d{i}`, got {col:?}"
            )));
        }
    }
    let mut data = Vec::new();
    let mut scores = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != d + 1 {
            return Err(IoError::Parse(format!(
                "CSV row {} has {} fields, expected {}",
                lineno + 2,
                fields.len(),
                d + 1
            )));
        }
        for f in &fields[..d] {
            data.push(f.parse::<f64>().map_err(|e| {
                IoError::Parse(format!("CSV row {}: {e}", lineno + 2))
            })?);
        }
        scores.push(fields[d].parse::<f64>().map_err(|e| {
            IoError::Parse(format!("CSV row {}: {e}", lineno + 2))
        })?);
    }
    if scores.is_empty() {
        return Err(IoError::Parse("CSV file has no data rows".to_string()));
    }
    let tokens = TokenMatrix::new(scores.len(), d, data)?;
    let saliency = SaliencyVector::new(scores)?;
    Ok((tokens, saliency))
}
