//! Named graphs with recorded invariants.
//!
//! Cubic graphs are generated from LCF codes or the generalized Petersen
//! construction; the rest load from edge lists under `data/`. Every load is
//! checked against the recorded order, size, degree and girth.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{from_lcf, generalized_petersen, parse_edge_list, Graph};

#[derive(Debug, Clone, Copy)]
enum Source {
    Lcf(&'static [i64], usize),
    Petersen(usize, usize),
    Data(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub order: usize,
    pub size: usize,
    pub degree: usize,
    pub girth: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub invariants: Invariants,
    source: Source,
}

const fn inv(order: usize, size: usize, degree: usize, girth: usize) -> Invariants {
    Invariants { order, size, degree, girth }
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "nauru",
        invariants: inv(24, 36, 3, 6),
        source: Source::Lcf(&[5, -9, 7, -7, 9, -5], 4),
    },
    CatalogEntry {
        name: "truncated-tetrahedral",
        invariants: inv(12, 18, 3, 3),
        source: Source::Lcf(&[2, 6, -2], 4),
    },
    CatalogEntry {
        name: "mcgee",
        invariants: inv(24, 36, 3, 7),
        source: Source::Lcf(&[12, 7, -7], 8),
    },
    CatalogEntry {
        name: "gp-12-4",
        invariants: inv(24, 36, 3, 3),
        source: Source::Petersen(12, 4),
    },
    CatalogEntry {
        name: "sylvester",
        invariants: inv(36, 90, 5, 5),
        source: Source::Data(include_str!("../data/sylvester.edges")),
    },
    CatalogEntry {
        name: "pappus",
        invariants: inv(18, 27, 3, 6),
        source: Source::Lcf(&[5, 7, -7, 7, -7, -5], 3),
    },
    CatalogEntry {
        name: "frucht",
        invariants: inv(12, 18, 3, 3),
        source: Source::Lcf(&[-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2], 1),
    },
    CatalogEntry {
        name: "dyck",
        invariants: inv(32, 48, 3, 6),
        source: Source::Lcf(&[5, -5, 13, -13], 8),
    },
    CatalogEntry {
        name: "wong",
        invariants: inv(30, 75, 5, 5),
        source: Source::Data(include_str!("../data/wong.edges")),
    },
    CatalogEntry {
        name: "robertson",
        invariants: inv(19, 38, 4, 5),
        source: Source::Data(include_str!("../data/robertson.edges")),
    },
    CatalogEntry {
        name: "petersen",
        invariants: inv(10, 15, 3, 5),
        source: Source::Petersen(5, 2),
    },
    CatalogEntry {
        name: "24-cell",
        invariants: inv(24, 96, 8, 3),
        source: Source::Data(include_str!("../data/24-cell.edges")),
    },
    CatalogEntry {
        name: "icosidodecahedral",
        invariants: inv(30, 60, 4, 3),
        source: Source::Data(include_str!("../data/icosidodecahedral.edges")),
    },
    CatalogEntry {
        name: "gewirtz",
        invariants: inv(56, 280, 10, 4),
        source: Source::Data(include_str!("../data/gewirtz.edges")),
    },
    CatalogEntry {
        name: "gosset",
        invariants: inv(56, 756, 27, 3),
        source: Source::Data(include_str!("../data/gosset.edges")),
    },
    CatalogEntry {
        name: "meringer",
        invariants: inv(30, 75, 5, 5),
        source: Source::Data(include_str!("../data/meringer.edges")),
    },
];

impl CatalogEntry {
    /// How the graph is built, e.g. `LCF [5,-9,7,-7,9,-5]^4`.
    pub fn construction(&self) -> String {
        match self.source {
            Source::Lcf(code, repeats) => {
                let terms: Vec<String> = code.iter().map(i64::to_string).collect();
                format!("LCF [{}]^{repeats}", terms.join(","))
            }
            Source::Petersen(m, k) => format!("generalized Petersen GP({m},{k})"),
            Source::Data(_) => "edge list".to_string(),
        }
    }
}

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|e| e.name)
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownGraph(name.to_string()))
}

/// Builds a catalog graph and checks it against its recorded invariants.
pub fn catalog_get(name: &str) -> Result<Graph> {
    let entry = catalog_entry(name)?;
    let g = match entry.source {
        Source::Lcf(code, repeats) => from_lcf(code, repeats)?,
        Source::Petersen(m, k) => generalized_petersen(m, k)?,
        Source::Data(text) => parse_edge_list(text)?,
    };
    let found = Invariants {
        order: g.n(),
        size: g.edge_count(),
        degree: g.regular_degree().unwrap_or(0),
        girth: g.girth().unwrap_or(0),
    };
    if found != entry.invariants {
        return Err(Error::CatalogInvariant {
            name: name.to_string(),
            detail: format!("expected {:?}, found {:?}", entry.invariants, found),
        });
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for name in catalog_names() {
            let g = catalog_get(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(g.component_count(), 1);
        }
        assert_eq!(CATALOG.len(), 16);
    }

    #[test]
    fn reference_sizes() {
        assert_eq!(catalog_get("nauru").unwrap().n(), 24);
        let gosset = catalog_get("gosset").unwrap();
        assert_eq!((gosset.n(), gosset.edge_count()), (56, 756));
        let wong = catalog_get("wong").unwrap();
        assert_eq!((wong.n(), wong.regular_degree()), (30, Some(5)));
        let gewirtz = catalog_get("gewirtz").unwrap();
        assert_eq!((gewirtz.n(), gewirtz.edge_count(), gewirtz.regular_degree()), (56, 280, Some(10)));
    }

    #[test]
    fn unknown_name() {
        assert_eq!(catalog_get("cayley-30-1"), Err(Error::UnknownGraph("cayley-30-1".into())));
    }

    #[test]
    fn gewirtz_is_strongly_regular() {
        // srg(56, 10, 0, 2): adjacent pairs share no neighbour, others share two.
        let g = catalog_get("gewirtz").unwrap();
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let common = g.neighbors(u).iter().filter(|&&x| g.has_edge(v, x)).count();
                assert_eq!(common, if g.has_edge(u, v) { 0 } else { 2 });
            }
        }
    }
}
