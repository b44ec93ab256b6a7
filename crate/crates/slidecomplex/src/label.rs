//! Hierarchical labels for edges and faces.
//!
//! Refinement and surgery never recycle names: a derived cell gets its parent's
//! label with a short suffix pushed on. Lexicographic order on the path is the
//! crate-wide canonical order, so any two meshes built from the same base by the
//! same set of operations (in any order) sort their cells identically. That is
//! what makes canonical keys independent of construction history.

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Label(pub SmallVec<[u32; 6]>);

impl Label {
    pub fn base(root: u32) -> Self {
        Label(SmallVec::from_slice(&[root]))
    }

    pub fn child(&self, tag: u32) -> Self {
        let mut p = self.0.clone();
        p.push(tag);
        Label(p)
    }

    pub fn child2(&self, tag: u32, sub: u32) -> Self {
        let mut p = self.0.clone();
        p.push(tag);
        p.push(sub);
        Label(p)
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut p = SmallVec::new();
        for part in s.split('.') {
            p.push(part.parse().ok()?);
        }
        if p.is_empty() {
            return None;
        }
        Some(Label(p))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{part}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L{self}")
    }
}
