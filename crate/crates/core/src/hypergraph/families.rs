use std::fmt;
use std::str::FromStr;

use super::{Hypergraph, HypergraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    NCycle,
    Beam,
    Fan,
    Nested,
    S7Marker,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 5] = [
        FamilyKind::NCycle,
        FamilyKind::Beam,
        FamilyKind::Fan,
        FamilyKind::Nested,
        FamilyKind::S7Marker,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::NCycle => "n_cycle",
            FamilyKind::Beam => "beam",
            FamilyKind::Fan => "fan",
            FamilyKind::Nested => "nested",
            FamilyKind::S7Marker => "s7_marker",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HypergraphError::UnknownFamily(s.to_string()))
    }
}

/// Labelled member of a named family, vertices `u1..un`.
pub fn family(kind: FamilyKind, index: usize) -> Result<Hypergraph, HypergraphError> {
    let unsupported = || HypergraphError::UnsupportedFamily {
        kind: kind.name().to_string(),
        index,
    };
    let (n, edges) = match kind {
        FamilyKind::NCycle if index >= 3 => n_cycle(index),
        FamilyKind::Beam if index >= 1 => beam(index),
        FamilyKind::Fan if index >= 1 => fan(index),
        FamilyKind::Nested if index >= 1 => nested(index),
        // the nested members on which the 3-element separator is exercised
        FamilyKind::S7Marker if index >= 2 => nested(index),
        _ => return Err(unsupported()),
    };
    let refs: Vec<&[usize]> = edges.iter().map(|e| e.as_slice()).collect();
    Hypergraph::numbered(n, &refs)
}

fn n_cycle(n: usize) -> (usize, Vec<Vec<usize>>) {
    let wrap = |v: usize| if v == 2 * n + 1 { 1 } else { v };
    let edges = (1..=n).map(|k| vec![2 * k - 1, 2 * k, wrap(2 * k + 1)]).collect();
    (2 * n, edges)
}

/// Beam edges: a triangle, then two edges per step, each step hanging off
/// the apex vertex of the previous one or two steps.
fn beam(i: usize) -> (usize, Vec<Vec<usize>>) {
    let mut edges = vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]];
    for j in 2..=i {
        let (a, b) = (3 * j + 1, 3 * j + 2);
        let c = 3 * j + 3;
        let (left, right) = match j {
            2 => (1, 3),
            3 => (8, 3),
            _ if j % 2 == 1 => (3 * (j - 1) + 2, 3 * (j - 2) + 2),
            _ => (3 * (j - 2) + 2, 3 * (j - 1) + 2),
        };
        edges.push(vec![left, a, b]);
        edges.push(vec![b, c, right]);
    }
    (3 * i + 3, edges)
}

/// Fan edges: a triangle with apex `u1`, then a blade of two edges per step.
fn fan(i: usize) -> (usize, Vec<Vec<usize>>) {
    let mut edges = vec![vec![1, 2, 3], vec![3, 4, 5], vec![5, 6, 1]];
    for k in 2..=i {
        let prev = 3 * k - 1;
        edges.push(vec![prev, 3 * k + 1, 3 * k + 2]);
        edges.push(vec![3 * k + 2, 3 * k + 3, 1]);
    }
    (3 * i + 3, edges)
}

fn nested(i: usize) -> (usize, Vec<Vec<usize>>) {
    let mut edges = Vec::with_capacity(3 * i);
    for j in 1..=i {
        edges.push(vec![3 * j - 1, 3 * j + 3, 3 * j - 2]);
        edges.push(vec![3 * j - 2, 3 * j + 2, 3 * j]);
        edges.push(vec![3 * j, 3 * j + 1, 3 * j - 1]);
    }
    (3 * i + 3, edges)
}
