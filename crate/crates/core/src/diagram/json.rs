use crate::error::{Error, Result};
use crate::persistence::PersistenceDiagram;

/// Canonical JSON: pairs sorted by (dimension, birth, death), infinite deaths
/// written as `null`, metadata last. Equal diagrams give equal bytes.
pub fn diagram_to_json(diagram: &PersistenceDiagram) -> Vec<u8> {
    let mut canonical = diagram.clone();
    canonical.canonicalize();
    serde_json::to_vec(&canonical).expect("diagram serialization cannot fail")
}

/// Parses a diagram written by [`diagram_to_json`] and checks its pairs.
pub fn diagram_from_json(bytes: &[u8]) -> Result<PersistenceDiagram> {
    let diagram: PersistenceDiagram = serde_json::from_slice(bytes)?;
    for (i, p) in diagram.pairs.iter().enumerate() {
        let valid = p.homology_dimension <= 1
            && p.birth.is_finite()
            && p.birth >= 0.0
            && p.death >= p.birth;
        if !valid {
            return Err(Error::InvalidDiagram(format!(
                "pair {i} ({}, {}, {}) is not a valid persistence pair",
                p.homology_dimension, p.birth, p.death
            )));
        }
    }
    Ok(diagram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::{DiagramMetadata, PersistencePair, SkippedToken};
    use proptest::prelude::*;

    fn metadata() -> DiagramMetadata {
        DiagramMetadata {
            text_id: Some("c1".into()),
            embedding_dimension: Some(50),
            seed: Some(42),
            takens_dimension: Some(2),
            takens_delay: Some(2),
            max_homology_dim: 1,
            threshold: 1.5,
            keep_zero_bars: false,
            point_count: 3,
            skipped_tokens: vec![SkippedToken { position: 4, token: "zzz".into() }],
        }
    }

    #[test]
    fn empty_diagram() {
        let d = PersistenceDiagram { pairs: vec![], metadata: metadata() };
        let text = String::from_utf8(diagram_to_json(&d)).unwrap();
        assert!(text.starts_with(r#"{"pairs":[],"metadata":{"#), "{text}");
        assert_eq!(diagram_from_json(text.as_bytes()).unwrap(), d);
    }

    #[test]
    fn infinite_death_is_null_and_pairs_are_sorted() {
        let d = PersistenceDiagram {
            pairs: vec![
                PersistencePair::new(1, 0.5, 0.75),
                PersistencePair::new(0, 0.0, f64::INFINITY),
                PersistencePair::new(0, 0.0, 1.0),
            ],
            metadata: metadata(),
        };
        let text = String::from_utf8(diagram_to_json(&d)).unwrap();
        assert!(text.starts_with(
            r#"{"pairs":[{"dimension":0,"birth":0.0,"death":1.0},{"dimension":0,"birth":0.0,"death":null},{"dimension":1,"birth":0.5,"death":0.75}]"#
        ), "{text}");
        let back = diagram_from_json(text.as_bytes()).unwrap();
        assert!(back.pairs[1].death.is_infinite());
        assert_eq!(diagram_to_json(&back), text.as_bytes());
    }

    #[test]
    fn rejects_invalid_pairs() {
        let bad = br#"{"pairs":[{"dimension":1,"birth":2.0,"death":1.0}],"metadata":{"text_id":null,"embedding_dimension":null,"seed":null,"takens_dimension":null,"takens_delay":null,"max_homology_dim":1,"threshold":1.0,"keep_zero_bars":false,"point_count":2}}"#;
        assert!(diagram_from_json(bad).is_err());
        assert!(diagram_from_json(b"{").is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_lossless(
            raw in prop::collection::vec((0usize..2, 0.0f64..10.0, prop::option::of(0.0f64..10.0)), 0..20)
        ) {
            let pairs = raw.iter().map(|&(d, b, l)| PersistencePair::new(d, b, l.map_or(f64::INFINITY, |l| b + l))).collect();
            let mut d = PersistenceDiagram { pairs, metadata: metadata() };
            let back = diagram_from_json(&diagram_to_json(&d)).unwrap();
            d.canonicalize();
            prop_assert_eq!(back, d);
        }
    }
}
