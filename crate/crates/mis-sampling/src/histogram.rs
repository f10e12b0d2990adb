use std::collections::BTreeMap;

use graph_core::VertexSet;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::SampleError;

/// Provenance of a histogram: which backend produced it and under what seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramMeta {
    pub backend: String,
    pub seed: u64,
    pub shots_requested: u64,
    /// Label universe of the sampled graph, ascending. Fixes the meaning and
    /// width of serialized bitstrings.
    pub labels: Vec<usize>,
}

/// Aggregated measurement outcomes over a graph's label universe.
///
/// Keys are label bitmasks (bit `l` ⇔ label `l` was in the sampled set);
/// counts are positive and sum to `shots`. The map is ordered, so iteration
/// and serialization are deterministic.
///
/// JSON form: `{"shots", "backend", "seed", "labels", "entries"}` where
/// `entries` maps bitstrings to counts. A bitstring has one character per
/// vertex with the **most significant character corresponding to the highest
/// label** — e.g. labels `[0, 1, 2]` render the set `{0, 2}` as `"101"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleHistogram {
    entries: BTreeMap<u64, u64>,
    shots: u64,
    meta: HistogramMeta,
}

impl SampleHistogram {
    /// Validates and wraps raw counts: entries must be positive, supported on
    /// `meta.labels`, and non-empty.
    pub fn new(entries: BTreeMap<u64, u64>, meta: HistogramMeta) -> Result<Self, SampleError> {
        let label_mask = VertexSet::from_labels(meta.labels.iter().copied()).bits();
        if entries.is_empty() {
            return Err(SampleError::Histogram("no entries".into()));
        }
        let mut shots = 0u64;
        for (&bits, &count) in &entries {
            if bits & !label_mask != 0 {
                return Err(SampleError::ForeignSupport { bits: bits & !label_mask });
            }
            if count == 0 {
                return Err(SampleError::Histogram(format!("zero count for {bits:#b}")));
            }
            shots += count;
        }
        Ok(SampleHistogram { entries, shots, meta })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn meta(&self) -> &HistogramMeta {
        &self.meta
    }

    /// Raw entries in mask order.
    pub fn entries(&self) -> &BTreeMap<u64, u64> {
        &self.entries
    }

    /// Entries sorted by count descending, ties by mask ascending — the
    /// canonical scan order for "most frequent first" logic.
    pub fn by_frequency(&self) -> Vec<(VertexSet, u64)> {
        let mut v: Vec<(VertexSet, u64)> = self
            .entries
            .iter()
            .map(|(&bits, &count)| (VertexSet::from_bits(bits), count))
            .collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        v
    }

    fn mask_to_bitstring(&self, bits: u64) -> String {
        self.meta
            .labels
            .iter()
            .rev()
            .map(|&l| if bits & (1 << l) != 0 { '1' } else { '0' })
            .collect()
    }

    fn bitstring_to_mask(labels: &[usize], s: &str) -> Result<u64, String> {
        if s.len() != labels.len() {
            return Err(format!(
                "bitstring {s:?} has {} characters for {} labels",
                s.len(),
                labels.len()
            ));
        }
        let mut bits = 0u64;
        for (ch, &l) in s.chars().zip(labels.iter().rev()) {
            match ch {
                '1' => bits |= 1 << l,
                '0' => {}
                other => return Err(format!("bitstring {s:?} contains {other:?}")),
            }
        }
        Ok(bits)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("histogram serialization cannot fail")
    }

    pub fn from_json_str(s: &str) -> Result<Self, SampleError> {
        serde_json::from_str(s).map_err(|e| SampleError::Histogram(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct HistogramJson {
    shots: u64,
    backend: String,
    seed: u64,
    labels: Vec<usize>,
    entries: BTreeMap<String, u64>,
}

impl Serialize for SampleHistogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let json = HistogramJson {
            shots: self.shots,
            backend: self.meta.backend.clone(),
            seed: self.meta.seed,
            labels: self.meta.labels.clone(),
            entries: self
                .entries
                .iter()
                .map(|(&bits, &count)| (self.mask_to_bitstring(bits), count))
                .collect(),
        };
        json.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SampleHistogram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let json = HistogramJson::deserialize(deserializer)?;
        let mut entries = BTreeMap::new();
        for (s, count) in &json.entries {
            let bits = Self::bitstring_to_mask(&json.labels, s).map_err(D::Error::custom)?;
            if entries.insert(bits, *count).is_some() {
                return Err(D::Error::custom(format!("duplicate bitstring {s:?}")));
            }
        }
        let h = SampleHistogram::new(
            entries,
            HistogramMeta {
                backend: json.backend,
                seed: json.seed,
                shots_requested: json.shots,
                labels: json.labels,
            },
        )
        .map_err(D::Error::custom)?;
        if h.shots != json.shots {
            return Err(D::Error::custom(format!(
                "entry counts sum to {} but shots = {}",
                h.shots, json.shots
            )));
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(labels: &[usize]) -> HistogramMeta {
        HistogramMeta {
            backend: "test".into(),
            seed: 9,
            shots_requested: 35,
            labels: labels.to_vec(),
        }
    }

    #[test]
    fn frequency_order_breaks_ties_by_mask() {
        let entries = BTreeMap::from([(0b101, 20), (0b010, 10), (0b110, 5), (0b011, 5)]);
        let h = SampleHistogram::new(entries, meta(&[0, 1, 2])).unwrap();
        assert_eq!(h.shots(), 40);
        let order: Vec<u64> = h.by_frequency().iter().map(|(s, _)| s.bits()).collect();
        assert_eq!(order, vec![0b101, 0b010, 0b011, 0b110]);
    }

    #[test]
    fn bitstring_msb_is_highest_label() {
        let entries = BTreeMap::from([(0b101, 20), (0b010, 10), (0b110, 5)]);
        let h = SampleHistogram::new(entries, meta(&[0, 1, 2])).unwrap();
        let json = h.to_json_string();
        assert_eq!(
            json,
            r#"{"shots":35,"backend":"test","seed":9,"labels":[0,1,2],"entries":{"010":10,"101":20,"110":5}}"#
        );
        assert_eq!(SampleHistogram::from_json_str(&json).unwrap(), h);
    }

    #[test]
    fn sparse_labels_render_by_position() {
        // Labels {1, 4, 6}: set {1, 6} → characters for 6, 4, 1 → "101".
        let entries = BTreeMap::from([(0b100_0010u64, 3)]);
        let mut meta = meta(&[1, 4, 6]);
        meta.shots_requested = 3;
        let h = SampleHistogram::new(entries, meta).unwrap();
        let json = h.to_json_string();
        assert!(json.contains(r#""101":3"#), "{json}");
        assert_eq!(SampleHistogram::from_json_str(&json).unwrap(), h);
    }

    #[test]
    fn validation_rejects_foreign_bits_zero_counts_and_bad_strings() {
        assert!(matches!(
            SampleHistogram::new(BTreeMap::from([(0b1000, 1)]), meta(&[0, 1, 2])),
            Err(SampleError::ForeignSupport { bits: 0b1000 })
        ));
        assert!(SampleHistogram::new(BTreeMap::from([(0b1, 0)]), meta(&[0, 1, 2])).is_err());
        assert!(SampleHistogram::new(BTreeMap::new(), meta(&[0])).is_err());
        for bad in [
            r#"{"shots":1,"backend":"t","seed":0,"labels":[0,1],"entries":{"1":1}}"#, // width
            r#"{"shots":1,"backend":"t","seed":0,"labels":[0,1],"entries":{"2x":1}}"#, // chars
            r#"{"shots":2,"backend":"t","seed":0,"labels":[0,1],"entries":{"01":1}}"#, // sum
        ] {
            assert!(SampleHistogram::from_json_str(bad).is_err(), "accepted {bad}");
        }
    }
}
