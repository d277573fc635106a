//! Finite, ordered sets of basis labels below a cutoff.

use std::collections::HashMap;

use super::label::{AlgebraTag, Label};
use crate::qcore::HalfInt;

/// All admissible labels whose governing component is at most the cutoff,
/// in ascending lexicographic order, with an index lookup.
#[derive(Debug, Clone)]
pub struct TruncatedBasis {
    tag: AlgebraTag,
    cutoff: HalfInt,
    labels: Vec<Label>,
    index: HashMap<Label, u32>,
}

impl TruncatedBasis {
    /// Sort, deduplicate and index a label set. Labels above the cutoff are dropped.
    pub fn new(tag: AlgebraTag, cutoff: HalfInt, labels: impl IntoIterator<Item = Label>) -> Self {
        let mut labels: Vec<Label> = labels
            .into_iter()
            .filter(|l| l.tag == tag && l.governing() <= cutoff.twice)
            .collect();
        labels.sort();
        labels.dedup();
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        Self {
            tag,
            cutoff,
            labels,
            index,
        }
    }

    #[inline]
    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    #[inline]
    pub fn cutoff(&self) -> HalfInt {
        self.cutoff
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    #[inline]
    pub fn index_of(&self, l: &Label) -> Option<u32> {
        self.index.get(l).copied()
    }

    /// Indices of labels at distance at least `margin` (doubled units) from the cutoff.
    pub fn interior(&self, margin: i32) -> Vec<u32> {
        let bound = self.cutoff.twice - margin;
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.governing() <= bound)
            .map(|(i, _)| i as u32)
            .collect()
    }
}
