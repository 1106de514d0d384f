//! The bundled quivers.

use crate::{Quiver, Result};

/// `(name, document)` for every bundled quiver, faulty ones excluded.
pub const CORPUS: &[(&str, &str)] = &[
    ("a1", include_str!("../fixtures/a1.json")),
    ("a2", include_str!("../fixtures/a2.json")),
    ("jordan", include_str!("../fixtures/jordan.json")),
    ("two_loop", include_str!("../fixtures/two_loop.json")),
    ("loop_edge", include_str!("../fixtures/loop_edge.json")),
];

/// A2 with the sign of `Q` flipped; every verification should reject it.
pub const FAULTY_A2: &str = include_str!("../fixtures/a2_q_sign_flip.json");

pub fn corpus() -> Result<Vec<(&'static str, Quiver)>> {
    CORPUS
        .iter()
        .map(|(name, doc)| Ok((*name, Quiver::parse(doc)?)))
        .collect()
}

pub fn quiver(name: &str) -> Option<Quiver> {
    CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .and_then(|(_, doc)| Quiver::parse(doc).ok())
}
