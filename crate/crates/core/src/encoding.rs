//! Classical side of the encoding: records get positional addresses, the
//! addresses are paired with the `n`-bit indices `0..N` through a seeded
//! random bijection, and that bijection can be persisted and consulted
//! after the quantum part has run.
//!
//! The map only relabels indices. It is not a table of precomputed results.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::synthesis::register_width;

pub const MAPPING_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodingError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("N must be at least 1")]
    ZeroN,
    #[error("bit string `{0}` has width {1}, expected {2}")]
    WrongWidth(String, usize, usize),
    #[error("`{0}` is not a bit string")]
    NotBinary(String),
    #[error("index {0} not in B")]
    IndexNotInB(String),
    #[error("address ordinal {0} out of range for {1} records")]
    UnknownAddress(usize, usize),
    #[error("malformed mapping document: {0}")]
    Malformed(String),
    #[error("unsupported mapping document version {0} (expected {MAPPING_FORMAT_VERSION})")]
    Version(u32),
    #[error("mapping not bijective: {0}")]
    NotBijective(String),
}

/// Ordered records; a record's address is its position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dataset {
    records: Vec<Vec<u8>>,
}

impl Dataset {
    pub fn new(records: Vec<Vec<u8>>) -> Result<Self, EncodingError> {
        if records.is_empty() {
            return Err(EncodingError::EmptyDataset);
        }
        Ok(Dataset { records })
    }

    /// One record per line. A trailing newline does not start a record and
    /// a `\r` before each `\n` is dropped.
    pub fn from_lines(bytes: &[u8]) -> Result<Self, EncodingError> {
        let body = bytes.strip_suffix(b"\n").unwrap_or(bytes);
        if body.is_empty() {
            return Err(EncodingError::EmptyDataset);
        }
        let records = body
            .split(|&b| b == b'\n')
            .map(|line| line.strip_suffix(b"\r").unwrap_or(line).to_vec())
            .collect();
        Dataset::new(records)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn record(&self, address: usize) -> Option<&[u8]> {
        self.records.get(address).map(Vec::as_slice)
    }

    pub fn records(&self) -> &[Vec<u8>] {
        &self.records
    }
}

/// `(n, B)`: register width and the bit strings of `0..N`, MSB first.
pub fn build_indices(n_states: usize) -> Result<(usize, Vec<String>), EncodingError> {
    if n_states == 0 {
        return Err(EncodingError::ZeroN);
    }
    let width = register_width(n_states as u64);
    Ok((width, (0..n_states).map(|i| to_bits(i, width)).collect()))
}

fn to_bits(value: usize, width: usize) -> String {
    format!("{value:0width$b}")
}

/// Bijection between the index set `B` and record addresses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressMap {
    width: usize,
    seed: u64,
    /// index value → address ordinal
    address_of: Vec<usize>,
    /// address ordinal → index value
    index_of: Vec<usize>,
}

/// Pairs every index in `B` with one record address, using a ChaCha8
/// permutation seeded with `seed`.
pub fn build_mapping(dataset: &Dataset, seed: u64) -> AddressMap {
    let mut address_of: Vec<usize> = (0..dataset.len()).collect();
    address_of.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    AddressMap::from_permutation(address_of, seed).expect("a shuffled range is a permutation")
}

impl AddressMap {
    fn from_permutation(address_of: Vec<usize>, seed: u64) -> Result<Self, EncodingError> {
        let len = address_of.len();
        if len == 0 {
            return Err(EncodingError::EmptyDataset);
        }
        let mut index_of = vec![usize::MAX; len];
        for (idx, &addr) in address_of.iter().enumerate() {
            if addr >= len {
                return Err(EncodingError::UnknownAddress(addr, len));
            }
            if index_of[addr] != usize::MAX {
                return Err(EncodingError::NotBijective(format!(
                    "address {addr} is paired more than once"
                )));
            }
            index_of[addr] = idx;
        }
        Ok(AddressMap {
            width: register_width(len as u64),
            seed,
            address_of,
            index_of,
        })
    }

    pub fn len(&self) -> usize {
        self.address_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.address_of.is_empty()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `(bit string, address)` pairs in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (String, usize)> + '_ {
        self.address_of
            .iter()
            .enumerate()
            .map(|(idx, &addr)| (to_bits(idx, self.width), addr))
    }

    /// Bit string → record address.
    pub fn resolve(&self, bits: &str) -> Result<usize, EncodingError> {
        let idx = self.parse_index(bits)?;
        self.address_of
            .get(idx)
            .copied()
            .ok_or_else(|| EncodingError::IndexNotInB(bits.to_string()))
    }

    /// Record address → bit string.
    pub fn inverse(&self, address: usize) -> Result<String, EncodingError> {
        self.index_of
            .get(address)
            .map(|&idx| to_bits(idx, self.width))
            .ok_or(EncodingError::UnknownAddress(address, self.len()))
    }

    fn parse_index(&self, bits: &str) -> Result<usize, EncodingError> {
        if bits.len() != self.width {
            return Err(EncodingError::WrongWidth(bits.to_string(), bits.len(), self.width));
        }
        if !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(EncodingError::NotBinary(bits.to_string()));
        }
        usize::from_str_radix(bits, 2).map_err(|_| EncodingError::NotBinary(bits.to_string()))
    }

    /// Pretty-printed JSON document; byte-identical for identical maps.
    pub fn to_document(&self) -> String {
        let doc = MappingDocument {
            version: MAPPING_FORMAT_VERSION,
            n_states: self.len(),
            width: self.width,
            seed: self.seed,
            pairs: self.pairs().collect(),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("mapping document always serializes");
        text.push('\n');
        text
    }

    pub fn from_document(text: &str) -> Result<Self, EncodingError> {
        let doc: MappingDocument =
            serde_json::from_str(text).map_err(|e| EncodingError::Malformed(e.to_string()))?;
        if doc.version != MAPPING_FORMAT_VERSION {
            return Err(EncodingError::Version(doc.version));
        }
        if doc.n_states == 0 || doc.pairs.is_empty() {
            return Err(EncodingError::Malformed("mapping has no pairs".into()));
        }
        if doc.pairs.len() != doc.n_states {
            return Err(EncodingError::NotBijective(format!(
                "{} pairs for N = {}",
                doc.pairs.len(),
                doc.n_states
            )));
        }
        let width = register_width(doc.n_states as u64);
        if doc.width != width {
            return Err(EncodingError::Malformed(format!(
                "n = {} but N = {} needs n = {width}",
                doc.width, doc.n_states
            )));
        }
        let probe = AddressMap {
            width,
            seed: doc.seed,
            address_of: Vec::new(),
            index_of: Vec::new(),
        };
        let mut address_of = vec![usize::MAX; doc.n_states];
        for (bits, addr) in &doc.pairs {
            let idx = probe.parse_index(bits)?;
            if idx >= doc.n_states {
                return Err(EncodingError::IndexNotInB(bits.clone()));
            }
            if address_of[idx] != usize::MAX {
                return Err(EncodingError::NotBijective(format!("bit string {bits} appears twice")));
            }
            address_of[idx] = *addr;
        }
        AddressMap::from_permutation(address_of, doc.seed)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MappingDocument {
    version: u32,
    #[serde(rename = "N")]
    n_states: usize,
    #[serde(rename = "n")]
    width: usize,
    seed: u64,
    pairs: Vec<(String, usize)>,
}
