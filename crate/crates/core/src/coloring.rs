//! Strong 3-colorings (every edge polychromatic) and 2-robust extension.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

/// Color per vertex index, each in `0..3`.
pub type Coloring = Vec<u8>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("partial assignment gives {u} and {v} the same color {color}, but {{{u},{v}}} lies in an edge")]
    InvalidPartial { u: String, v: String, color: u8 },
    #[error("color {color} for {vertex} is outside 0..3")]
    BadColor { vertex: String, color: u8 },
    #[error("vertex {0} is assigned twice with different colors")]
    Conflicting(String),
    #[error("more than {0} strong colorings")]
    TooMany(usize),
}

struct Solver<'a> {
    h: &'a Hypergraph,
    order: Vec<usize>,
    incident: Vec<Vec<usize>>,
}

impl<'a> Solver<'a> {
    fn new(h: &'a Hypergraph) -> Self {
        let deg = h.degrees();
        let mut order: Vec<usize> = (0..h.vertex_count()).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
        let mut incident = vec![Vec::new(); h.vertex_count()];
        for (i, e) in h.edges().iter().enumerate() {
            for &v in e {
                incident[v].push(i);
            }
        }
        Self { h, order, incident }
    }

    /// Whether giving `v` color `c` keeps every edge through `v` rainbow and
    /// leaves each still-uncolored neighbour with some color.
    fn allowed(&self, v: usize, c: u8, col: &[Option<u8>]) -> bool {
        for &ei in &self.incident[v] {
            let e = &self.h.edges()[ei];
            if e.iter().any(|&w| w != v && col[w] == Some(c)) {
                return false;
            }
        }
        // forward check
        for &ei in &self.incident[v] {
            for &w in &self.h.edges()[ei] {
                if col[w].is_some() || w == v {
                    continue;
                }
                let mut used = 1u8 << c;
                for &ej in &self.incident[w] {
                    for &x in &self.h.edges()[ej] {
                        if let Some(cx) = col[x] {
                            if x != w {
                                used |= 1 << cx;
                            }
                        }
                    }
                }
                if used == 0b111 {
                    return false;
                }
            }
        }
        true
    }

    fn walk(&self, depth: usize, col: &mut Vec<Option<u8>>, visit: &mut dyn FnMut(&[Option<u8>]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(col);
        }
        let v = self.order[depth];
        if col[v].is_some() {
            return self.walk(depth + 1, col, visit);
        }
        for c in 0..3u8 {
            if self.allowed(v, c, col) {
                col[v] = Some(c);
                if self.walk(depth + 1, col, visit) {
                    col[v] = None;
                    return true;
                }
                col[v] = None;
            }
        }
        false
    }
}

pub fn is_strong(h: &Hypergraph, coloring: &[u8]) -> bool {
    h.edges().iter().all(|e| {
        let mut seen = 0u8;
        e.iter().all(|&v| {
            let bit = 1 << coloring[v];
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    })
}

/// All strong 3-colorings in lexicographic order, refusing past `cap`.
pub fn enumerate_strong_colorings_capped(h: &Hypergraph, cap: usize) -> Result<Vec<Coloring>, ColoringError> {
    let solver = Solver::new(h);
    let mut out = Vec::new();
    let mut over = false;
    let mut col = vec![None; h.vertex_count()];
    solver.walk(0, &mut col, &mut |c| {
        if out.len() == cap {
            over = true;
            return true;
        }
        out.push(c.iter().map(|x| x.expect("total at leaf")).collect());
        false
    });
    if over {
        return Err(ColoringError::TooMany(cap));
    }
    out.sort();
    Ok(out)
}

pub fn enumerate_strong_colorings(h: &Hypergraph) -> Vec<Coloring> {
    enumerate_strong_colorings_capped(h, usize::MAX).expect("uncapped")
}

fn check_partial(h: &Hypergraph, partial: &[(usize, u8)]) -> Result<Vec<Option<u8>>, ColoringError> {
    let mut col = vec![None; h.vertex_count()];
    for &(v, c) in partial {
        if c > 2 {
            return Err(ColoringError::BadColor { vertex: h.vertex_name(v).to_string(), color: c });
        }
        match col[v] {
            Some(old) if old != c => return Err(ColoringError::Conflicting(h.vertex_name(v).to_string())),
            _ => col[v] = Some(c),
        }
    }
    for (i, &(u, cu)) in partial.iter().enumerate() {
        for &(v, cv) in &partial[i + 1..] {
            if u != v && cu == cv && h.is_subhyperedge(&[u, v]) {
                return Err(ColoringError::InvalidPartial {
                    u: h.vertex_name(u).to_string(),
                    v: h.vertex_name(v).to_string(),
                    color: cu,
                });
            }
        }
    }
    Ok(col)
}

/// Whether some strong 3-coloring agrees with `partial` (vertex, color).
pub fn extends(h: &Hypergraph, partial: &[(usize, u8)]) -> Result<bool, ColoringError> {
    let mut col = check_partial(h, partial)?;
    Ok(Solver::new(h).walk(0, &mut col, &mut |_| true))
}

/// A completion of `partial`, if one exists.
pub fn extension(h: &Hypergraph, partial: &[(usize, u8)]) -> Result<Option<Coloring>, ColoringError> {
    let mut col = check_partial(h, partial)?;
    let mut found = None;
    Solver::new(h).walk(0, &mut col, &mut |c| {
        found = Some(c.iter().map(|x| x.expect("total")).collect());
        true
    });
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RobustnessFailure {
    pub pair: (usize, usize),
    pub colors: (u8, u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RobustnessReport {
    pub robust: bool,
    /// First pair and coloring, in vertex and color order, with no extension.
    pub failure: Option<RobustnessFailure>,
    pub partials_checked: usize,
    pub warning: Option<String>,
}

/// Tries every valid coloring of every vertex pair.
pub fn is_2_robust(h: &Hypergraph) -> RobustnessReport {
    let warning = if h.is_uniform3() {
        None
    } else {
        let w = "hypergraph is not 3-uniform; robustness is defined for 3-uniform inputs".to_string();
        log::warn!("{w}");
        Some(w)
    };
    let n = h.vertex_count();
    let mut checked = 0;
    for u in 0..n {
        for v in u + 1..n {
            let linked = h.is_subhyperedge(&[u, v]);
            for c1 in 0..3u8 {
                for c2 in 0..3u8 {
                    if linked && c1 == c2 {
                        continue;
                    }
                    checked += 1;
                    if !extends(h, &[(u, c1), (v, c2)]).expect("valid by construction") {
                        return RobustnessReport {
                            robust: false,
                            failure: Some(RobustnessFailure { pair: (u, v), colors: (c1, c2) }),
                            partials_checked: checked,
                            warning,
                        };
                    }
                }
            }
        }
    }
    RobustnessReport { robust: true, failure: None, partials_checked: checked, warning }
}
