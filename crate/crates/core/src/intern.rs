//! String interning for legislator ids.
//!
//! Tensor and series code works over dense `u32` node indices; the interner
//! maps canonical id strings to indices and back. Index assignment is
//! first-appearance order, so identical inputs always produce identical
//! indices.

use std::collections::HashMap;

/// Dense index for an interned legislator id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegId(pub u32);

impl LegId {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Default)]
pub struct Interner {
    names: Vec<String>,
    index: HashMap<String, LegId>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, name: &str) -> LegId {
        if let Some(&id) = self.index.get(name) {
            return id;
        }
        let id = LegId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<LegId> {
        self.index.get(name).copied()
    }

    pub fn name(&self, id: LegId) -> &str {
        &self.names[id.idx()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = LegId> {
        (0..self.names.len() as u32).map(LegId)
    }
}
