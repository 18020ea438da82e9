//! Literal executions of the variety-membership constructions: a base
//! semiring, a direct power, quoted generator tuples, the closure, the
//! quotient by a described ideal, and an isomorphism onto the claimed target.

use serde::Serialize;

use super::{
    find_embedding, find_semiring_isomorphism, find_semiring_isomorphism_seeded, generated_subsemiring,
    quotient_by_ideal, reduced_closure, ConstructionError, DirectPower, IdealShape, Tuple, DEFAULT_CLOSURE_CAP,
};
use crate::coloring::{enumerate_strong_colorings_capped, is_2_robust};
use crate::hg_semiring::{build_semiring, HypergraphSemiring};
use crate::hypergraph::{family, find_hypergraph_isomorphism, FamilyKind, Hypergraph};
use crate::semiring::FiniteSemiring;
use crate::terms::{builtin_identity, check_identity_flat, nested_identity, CheckConfig, Identity, Verdict};
use crate::words::build_sc_from_str;

/// Largest power checked tuple by tuple when an ideal shape has no
/// factor-level argument.
const ABSORB_CAP: u128 = 4096;

#[derive(Debug, Clone, Copy)]
pub struct WitnessConfig {
    pub closure_cap: usize,
    pub colorings_cap: usize,
    /// Full closures (with the exhaustive congruence check) run only below this.
    pub cross_check_cap: usize,
    pub check: CheckConfig,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            closure_cap: DEFAULT_CLOSURE_CAP,
            colorings_cap: 10_000,
            cross_check_cap: 5_000,
            check: CheckConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum WitnessKind {
    UniformReduction(Hypergraph),
    StrongcolorEquiv(Hypergraph),
    TriangleInAbcd,
    LeafRemoval(Hypergraph),
    BeamStep(usize),
    NestedChain(usize),
}

impl WitnessKind {
    pub const NAMES: [&'static str; 6] =
        ["uniform_reduction", "strongcolor_equiv", "triangle_in_abcd", "leaf_removal", "beam_step", "nested_chain"];

    pub fn name(&self) -> &'static str {
        match self {
            WitnessKind::UniformReduction(_) => "uniform_reduction",
            WitnessKind::StrongcolorEquiv(_) => "strongcolor_equiv",
            WitnessKind::TriangleInAbcd => "triangle_in_abcd",
            WitnessKind::LeafRemoval(_) => "leaf_removal",
            WitnessKind::BeamStep(_) => "beam_step",
            WitnessKind::NestedChain(_) => "nested_chain",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorRecord {
    pub name: String,
    pub tuple: String,
    /// Claimed image in the target.
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionTrace {
    pub label: String,
    pub base: String,
    pub base_size: usize,
    pub arity: usize,
    pub generators: Vec<GeneratorRecord>,
    pub ideal: String,
    pub ideal_check: Option<String>,
    /// `|A \ J|`.
    pub complement_size: Option<usize>,
    /// `|A|` and `|J|`, known when the full closure ran.
    pub carrier_size: Option<usize>,
    pub ideal_size: Option<usize>,
    pub quotient_size: Option<usize>,
    pub quotient_flat: Option<bool>,
    pub target: String,
    pub target_size: usize,
    /// Whether the generator map itself extends to the isomorphism.
    pub seeded: Option<bool>,
    pub isomorphism: Option<Vec<(String, String)>>,
    pub cross_check: Option<String>,
    pub ok: bool,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityTrace {
    pub semiring: String,
    pub identity: String,
    pub expected: Verdict,
    pub verdict: Option<Verdict>,
    pub counterexample: Option<Vec<(String, String)>>,
    pub nodes: Option<u64>,
    pub ok: bool,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Construction(ConstructionTrace),
    Identity(IdentityTrace),
    HypergraphIso {
        from: String,
        to: String,
        mapping: Option<Vec<(String, String)>>,
        ok: bool,
    },
    Embedding {
        sub: String,
        ambient: String,
        seed: String,
        ok: bool,
    },
    Robustness {
        robust: bool,
        failure: Option<String>,
        ok: bool,
    },
}

impl Step {
    pub fn ok(&self) -> bool {
        match self {
            Step::Construction(t) => t.ok,
            Step::Identity(t) => t.ok,
            Step::HypergraphIso { ok, .. } | Step::Embedding { ok, .. } | Step::Robustness { ok, .. } => *ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub kind: String,
    pub params: String,
    pub claim: String,
    pub success: bool,
    pub failure: Option<String>,
    pub flags: Vec<String>,
    pub steps: Vec<Step>,
}

impl WitnessReport {
    fn new(kind: &WitnessKind, params: String, claim: String) -> Self {
        Self { kind: kind.name().to_string(), params, claim, success: false, failure: None, flags: Vec::new(), steps: Vec::new() }
    }

    fn finish(mut self) -> Self {
        self.success = !self.steps.is_empty() && self.steps.iter().all(Step::ok);
        if !self.success && self.failure.is_none() {
            let first = self.steps.iter().position(|s| !s.ok());
            self.failure = Some(match first {
                Some(i) => format!("step {} failed; contradicts: {}", i + 1, self.claim),
                None => "no steps ran".to_string(),
            });
        }
        self
    }
}

fn edge_list(h: &Hypergraph) -> String {
    let parts: Vec<String> = (0..h.edge_count()).map(|e| format!("{{{}}}", h.edge_names(e).join(","))).collect();
    parts.join(" ")
}

fn sc(spec: &str) -> FiniteSemiring {
    build_sc_from_str(spec).expect("built-in word sets are valid")
}

fn el(s: &FiniteSemiring, label: &str) -> usize {
    s.index_of(label).expect("built-in label exists")
}

struct Construction<'a> {
    label: String,
    base_name: String,
    base: FiniteSemiring,
    arity: usize,
    /// Name, tuple, and claimed image in the target.
    gens: Vec<(String, Tuple, usize)>,
    shape: IdealShape,
    target_name: String,
    target: &'a FiniteSemiring,
}

fn construct(c: Construction<'_>, cfg: &WitnessConfig) -> ConstructionTrace {
    let power = DirectPower::new(c.base, c.arity).expect("witness arities are positive");
    let generators = c
        .gens
        .iter()
        .map(|(name, t, img)| GeneratorRecord { name: name.clone(), tuple: power.label(t), image: c.target.label(*img).to_string() })
        .collect();
    let mut trace = ConstructionTrace {
        label: c.label,
        base: c.base_name,
        base_size: power.base().size(),
        arity: c.arity,
        generators,
        ideal: c.shape.describe(power.base()),
        ideal_check: None,
        complement_size: None,
        carrier_size: None,
        ideal_size: None,
        quotient_size: None,
        quotient_flat: None,
        target: c.target_name,
        target_size: c.target.size(),
        seeded: None,
        isomorphism: None,
        cross_check: None,
        ok: false,
        failure: None,
    };
    match c.shape.verify_absorbing(&power, ABSORB_CAP as usize) {
        Ok(how) => trace.ideal_check = Some(how),
        Err(e) => {
            trace.failure = Some(format!("ideal stage: {e}"));
            return trace;
        }
    }
    let tuples: Vec<Tuple> = c.gens.iter().map(|g| g.1.clone()).collect();
    let red = match reduced_closure(power.clone(), &tuples, c.shape, cfg.closure_cap) {
        Ok(r) => r,
        Err(e) => {
            trace.failure = Some(format!("closure stage: {e}"));
            return trace;
        }
    };
    trace.complement_size = Some(red.elements().len());
    let q = red.quotient();
    trace.quotient_size = Some(q.size());
    let flat = q.is_flat();
    trace.quotient_flat = Some(flat);
    if !flat {
        trace.failure = Some("quotient stage: A/J is not flat".to_string());
        return trace;
    }

    let seed: Vec<(usize, usize)> = tuples.iter().zip(&c.gens).map(|(t, g)| (red.class_of(t), g.2)).collect();
    let found = find_semiring_isomorphism_seeded(&q, c.target, &seed)
        .map(|m| (true, m))
        .or_else(|| find_semiring_isomorphism(&q, c.target).map(|m| (false, m)));
    match found {
        Some((seeded, m)) => {
            trace.seeded = Some(seeded);
            trace.isomorphism =
                Some(m.iter().enumerate().map(|(x, &y)| (q.label(x).to_string(), c.target.label(y).to_string())).collect());
        }
        None => {
            trace.failure = Some(format!(
                "isomorphism stage: A/J ({} elements) is not isomorphic to {} ({} elements)",
                q.size(),
                trace.target,
                c.target.size()
            ));
            return trace;
        }
    }

    let zero = power.base().zero().expect("checked by the ideal stage");
    match generated_subsemiring(power, &tuples, cfg.cross_check_cap) {
        Err(ConstructionError::ClosureCap(n)) => {
            trace.cross_check = Some(format!("skipped: carrier exceeds {n} elements"));
        }
        Err(e) => {
            trace.failure = Some(format!("cross-check stage: {e}"));
            return trace;
        }
        Ok(full) => {
            let ideal: Vec<usize> = (0..full.len()).filter(|&i| c.shape.contains(zero, &full.elements()[i])).collect();
            trace.carrier_size = Some(full.len());
            trace.ideal_size = Some(ideal.len());
            let pairs: Vec<Tuple> = full.elements().to_vec();
            let (full_q, classes) = if ideal.is_empty() {
                (full.to_semiring(), (0..full.len()).collect::<Vec<_>>())
            } else {
                match quotient_by_ideal(full, &ideal) {
                    Ok(iq) => (iq.quotient, iq.class_of),
                    Err(e) => {
                        trace.failure = Some(format!("congruence stage: {e}"));
                        return trace;
                    }
                }
            };
            let mut seed: Vec<(usize, usize)> = pairs.iter().enumerate().map(|(i, t)| (classes[i], red.class_of(t))).collect();
            seed.sort_unstable();
            seed.dedup();
            if find_semiring_isomorphism_seeded(&full_q, &q, &seed).is_some() {
                trace.cross_check = Some(format!(
                    "agrees: full closure has {} elements, |J| = {}, congruence verified",
                    pairs.len(),
                    ideal.len()
                ));
            } else {
                trace.failure = Some("cross-check stage: full-closure quotient differs from the reduced one".to_string());
                return trace;
            }
        }
    }
    trace.ok = true;
    trace
}

fn identity_step(name: &str, s: &FiniteSemiring, id: &Identity, expected: Verdict, cfg: &CheckConfig) -> Step {
    let mut t = IdentityTrace {
        semiring: name.to_string(),
        identity: id.to_string(),
        expected,
        verdict: None,
        counterexample: None,
        nodes: None,
        ok: false,
        failure: None,
    };
    let result = if s.is_flat() {
        check_identity_flat(s, id, cfg)
    } else {
        crate::terms::check_identity_bruteforce(s, id, cfg)
    };
    match result {
        Ok(r) => {
            t.verdict = Some(r.verdict);
            t.counterexample = r.named_counterexample(id, s);
            t.nodes = Some(r.nodes);
            t.ok = r.verdict == expected;
        }
        Err(e) => t.failure = Some(e.to_string()),
    }
    Step::Identity(t)
}

fn hg(h: &Hypergraph) -> Result<HypergraphSemiring, ConstructionError> {
    Ok(build_semiring(h)?)
}

/// Runs the construction for `kind` and records every stage.
pub fn verify_witness(kind: &WitnessKind, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    let report = match kind {
        WitnessKind::TriangleInAbcd => triangle_in_abcd(kind, cfg)?,
        WitnessKind::StrongcolorEquiv(h) => strongcolor_equiv(kind, h, cfg)?,
        WitnessKind::UniformReduction(h) => uniform_reduction(kind, h, cfg)?,
        WitnessKind::LeafRemoval(h) => leaf_removal(kind, h, cfg)?,
        WitnessKind::BeamStep(i) => beam_step(kind, *i, cfg)?,
        WitnessKind::NestedChain(i) => nested_chain(kind, *i, cfg)?,
    };
    Ok(report.finish())
}

fn triangle_in_abcd(kind: &WitnessKind, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    let mut r = WitnessReport::new(
        kind,
        String::new(),
        "the triangle semiring is a quotient of a subsemiring of S_c(abcd)^2, and its variety lies strictly between \
         those of S_c(abc) and S_c(abcd)"
            .to_string(),
    );
    let abcd = sc("abcd");
    let triangle = family(FamilyKind::Beam, 1)?;
    let target = hg(&triangle)?;
    let quoted = [("a", "bc"), ("bc", "d"), ("d", "a"), ("ab", "bc"), ("c", "d"), ("bd", "a")];
    let gens = quoted
        .iter()
        .enumerate()
        .map(|(i, (x, y))| (format!("alpha{}", i + 1), vec![el(&abcd, x), el(&abcd, y)], target.gen_index(i)))
        .collect();
    let top = el(&abcd, "abcd");
    r.steps.push(Step::Construction(construct(
        Construction {
            label: "A/J from six pairs over S_c(abcd) onto the triangle semiring".to_string(),
            base_name: "S_c(abcd)".to_string(),
            base: abcd.clone(),
            arity: 2,
            gens,
            shape: IdealShape::ZeroOrUnbalancedTop { top },
            target_name: format!("S_H for {}", edge_list(&triangle)),
            target: target.semiring(),
        },
        cfg,
    )));
    let eq31 = builtin_identity("eq3.1")?;
    let eq44 = builtin_identity("eq4.4")?;
    r.steps.push(identity_step("S_c(abc)", &sc("abc"), &eq31, Verdict::Holds, &cfg.check));
    r.steps.push(identity_step("triangle", target.semiring(), &eq31, Verdict::Fails, &cfg.check));
    r.steps.push(identity_step("triangle", target.semiring(), &eq44, Verdict::Holds, &cfg.check));
    r.steps.push(identity_step("S_c(abcd)", &abcd, &eq44, Verdict::Fails, &cfg.check));
    Ok(r)
}

fn strongcolor_equiv(kind: &WitnessKind, h: &Hypergraph, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    h.ensure_valid()?;
    if !h.is_uniform3() {
        return Err(ConstructionError::Precondition("strongcolor_equiv needs a 3-uniform hypergraph".into()));
    }
    let mut r = WitnessReport::new(
        kind,
        edge_list(h),
        "a 2-robustly strong 3-colorable hypergraph semiring is a quotient of a subsemiring of S_c(abc)^T, T its strong \
         3-colorings"
            .to_string(),
    );
    let robust = is_2_robust(h);
    let failure = robust.failure.as_ref().map(|f| {
        format!("{{{},{}}} colored ({},{}) has no extension", h.vertex_name(f.pair.0), h.vertex_name(f.pair.1), f.colors.0, f.colors.1)
    });
    r.steps.push(Step::Robustness { robust: robust.robust, failure, ok: robust.robust });
    let colorings = enumerate_strong_colorings_capped(h, cfg.colorings_cap)?;
    if colorings.is_empty() {
        return Err(ConstructionError::Precondition("hypergraph has no strong 3-coloring".into()));
    }
    let abc = sc("abc");
    let letters = [el(&abc, "a"), el(&abc, "b"), el(&abc, "c")];
    let target = hg(h)?;
    let gens = (0..h.vertex_count())
        .map(|v| {
            let t = colorings.iter().map(|phi| letters[phi[v] as usize]).collect();
            (format!("alpha_{}", h.vertex_name(v)), t, target.gen_index(v))
        })
        .collect();
    r.steps.push(Step::Construction(construct(
        Construction {
            label: format!("A/J over {} strong colorings onto S_H", colorings.len()),
            base_name: "S_c(abc)".to_string(),
            base: abc,
            arity: colorings.len(),
            gens,
            shape: IdealShape::SomeCoordinateZero,
            target_name: format!("S_H for {}", edge_list(h)),
            target: target.semiring(),
        },
        cfg,
    )));
    Ok(r)
}

/// Vertex index in `to` of vertex `v` of `from`, matched by name.
fn same_vertex(from: &Hypergraph, to: &Hypergraph, v: usize) -> usize {
    to.vertex_index(from.vertex_name(v)).expect("subhypergraph keeps names")
}

fn uniform_reduction(kind: &WitnessKind, h: &Hypergraph, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    h.ensure_valid()?;
    if !h.edges().iter().any(|e| e.len() == 2) {
        return Err(ConstructionError::Precondition("uniform_reduction needs an edge of size 2".into()));
    }
    let mut r = WitnessReport::new(
        kind,
        edge_list(h),
        "deleting a 2-edge together with its vertices preserves the generated variety, so S_H lies in the variety of a \
         3-uniform hypergraph semiring"
            .to_string(),
    );
    let mut current = h.clone();
    while let Some(em) = current.edges().iter().position(|e| e.len() == 2) {
        let pair = current.edges()[em].clone();
        let keep: Vec<usize> = (0..current.vertex_count()).filter(|v| !pair.contains(v)).collect();
        let h1 = current.induced(&keep);
        let Some(first) = h1.edges().iter().find(|e| e.len() == 3).cloned() else {
            return Err(ConstructionError::Precondition(format!(
                "no 3-edge remains after deleting {{{}}}",
                current.edge_names(em).join(",")
            )));
        };
        let base = hg(&h1)?;
        let target = hg(&current)?;
        r.flags.extend(target.flags().iter().cloned());
        let (u1, u2, u3) = (first[0], first[1], first[2]);
        let mut gens: Vec<(String, Tuple, usize)> = (0..h1.vertex_count())
            .map(|v| {
                let g = base.gen_index(v);
                (format!("alpha_{}", h1.vertex_name(v)), vec![g, g], target.gen_index(same_vertex(&h1, &current, v)))
            })
            .collect();
        let (w12, g3) = (base.word_index(&[u1, u2]), base.gen_index(u3));
        gens.push((format!("alpha_{}", current.vertex_name(pair[0])), vec![w12, g3], target.gen_index(pair[0])));
        gens.push((format!("alpha_{}", current.vertex_name(pair[1])), vec![g3, w12], target.gen_index(pair[1])));
        r.steps.push(Step::Construction(construct(
            Construction {
                label: format!(
                    "delete {{{}}}: S_H is a quotient of a subsemiring of (S_H1)^2",
                    current.edge_names(em).join(",")
                ),
                base_name: format!("S_H1 for {}", edge_list(&h1)),
                base: base.into_semiring(),
                arity: 2,
                gens,
                shape: IdealShape::SomeCoordinateZero,
                target_name: format!("S_H for {}", edge_list(&current)),
                target: target.semiring(),
            },
            cfg,
        )));
        current = h1;
    }
    Ok(r)
}

fn leaf_removal(kind: &WitnessKind, h: &Hypergraph, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    h.ensure_valid()?;
    if !h.is_uniform3() {
        return Err(ConstructionError::Precondition("leaf_removal needs a 3-uniform hypergraph; run uniform_reduction first".into()));
    }
    if h.girth().is_infinite() {
        return Err(ConstructionError::Precondition("leaf_removal needs a hypergraph with a cycle".into()));
    }
    if h.leaves().is_empty() {
        return Err(ConstructionError::Precondition("hypergraph has no leaf".into()));
    }
    let mut r = WitnessReport::new(
        kind,
        edge_list(h),
        "deleting a leaf preserves the generated variety, so S_H lies in the variety of its leafless core".to_string(),
    );
    let mut current = h.clone();
    while let Some(&leaf) = current.leaves().first() {
        let others: Vec<usize> = (0..current.edge_count()).filter(|&e| e != leaf).collect();
        let leaf_vs = current.edges()[leaf].clone();
        let shared: Vec<usize> = leaf_vs
            .iter()
            .copied()
            .filter(|v| others.iter().any(|&e| current.edges()[e].contains(v)))
            .collect();
        let h1 = current.partial(&others);
        let base = hg(&h1)?;
        let target = hg(&current)?;
        let mut gens: Vec<(String, Tuple, usize)> = (0..h1.vertex_count())
            .map(|v| {
                let g = base.gen_index(v);
                (format!("alpha_{}", h1.vertex_name(v)), vec![g, g, g], target.gen_index(same_vertex(&h1, &current, v)))
            })
            .collect();
        let in_h1 = |v: usize| base.gen_index(same_vertex(&current, &h1, v));
        let case = match shared.as_slice() {
            [w] => {
                let e1 = others.iter().map(|&e| &current.edges()[e]).find(|e| e.contains(w)).expect("w is shared");
                let rest: Vec<usize> = e1.iter().copied().filter(|v| v != w).collect();
                let (g2, g3) = (in_h1(rest[0]), in_h1(rest[1]));
                let new: Vec<usize> = leaf_vs.iter().copied().filter(|v| v != w).collect();
                gens.push((format!("alpha_{}", current.vertex_name(new[0])), vec![g2, g3, g2], target.gen_index(new[0])));
                gens.push((format!("alpha_{}", current.vertex_name(new[1])), vec![g3, g2, g3], target.gen_index(new[1])));
                format!("leaf shares {}", current.vertex_name(*w))
            }
            [] => {
                let e1 = &current.edges()[others[0]];
                let g: Vec<usize> = e1.iter().map(|&v| in_h1(v)).collect();
                for (k, &v) in leaf_vs.iter().enumerate() {
                    let t = (0..3).map(|c| g[(c + k) % 3]).collect();
                    gens.push((format!("alpha_{}", current.vertex_name(v)), t, target.gen_index(v)));
                }
                "leaf is disjoint".to_string()
            }
            _ => unreachable!("a leaf shares at most one vertex"),
        };
        r.steps.push(Step::Construction(construct(
            Construction {
                label: format!(
                    "remove leaf {{{}}} ({case}): S_H is a quotient of a subsemiring of (S_H1)^3",
                    current.edge_names(leaf).join(",")
                ),
                base_name: format!("S_H1 for {}", edge_list(&h1)),
                base: base.into_semiring(),
                arity: 3,
                gens,
                shape: IdealShape::SomeCoordinateZero,
                target_name: format!("S_H for {}", edge_list(&current)),
                target: target.semiring(),
            },
            cfg,
        )));
        current = h1;
    }
    Ok(r)
}

/// Third coordinates of the new beta generators, by column `k ≡ step (mod 6)`.
const BEAM_MATRIX: [[usize; 6]; 3] = [[3, 2, 2, 1, 1, 3], [2, 3, 1, 2, 3, 1], [1, 1, 3, 3, 2, 2]];

fn beam_column(step: usize) -> usize {
    (step + 5) % 6
}

/// The relabelled beam on `alpha1..alpha6` and `beta<j>.<k>` built edge by
/// edge from the recursion; `i` is the number of beta triples.
pub(crate) fn beam_bar(i: usize) -> Hypergraph {
    let mut names: Vec<String> = (1..=6).map(|k| format!("alpha{k}")).collect();
    for j in 1..=i {
        names.extend((1..=3).map(|k| format!("beta{j}.{k}")));
    }
    let a = |k: usize| k - 1;
    let b = |j: usize, k: usize| 6 + 3 * (j - 1) + (k - 1);
    let mut edges = vec![
        vec![a(1), a(2), a(3)],
        vec![a(3), a(4), a(5)],
        vec![a(5), a(6), a(1)],
        vec![a(5), b(1, 1), b(1, 2)],
        vec![b(1, 2), b(1, 3), a(1)],
    ];
    for t in 2..=i {
        let (left, right) = match t {
            2 => (a(1), a(3)),
            3 => (b(2, 2), a(3)),
            _ if t % 2 == 1 => (b(t - 1, 2), b(t - 2, 2)),
            _ => (b(t - 2, 2), b(t - 1, 2)),
        };
        edges.push(vec![left, b(t, 1), b(t, 2)]);
        edges.push(vec![b(t, 2), b(t, 3), right]);
    }
    for e in &mut edges {
        e.sort_unstable();
    }
    Hypergraph::from_indices(names, edges).expect("recursion yields a sound hypergraph")
}

fn beam_step(kind: &WitnessKind, i: usize, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    if i == 0 {
        return Err(ConstructionError::Precondition("beam_step index starts at 1".into()));
    }
    let mut r = WitnessReport::new(
        kind,
        format!("i={i}"),
        format!("S_B{} is a quotient of a subsemiring of (S_B{i})^3, so the beam varieties coincide", i + 1),
    );
    if i >= 6 {
        r.flags.push("column 6 of the generator matrix is used for steps divisible by 6".to_string());
    }
    let bi = family(FamilyKind::Beam, i)?;
    let next = family(FamilyKind::Beam, i + 1)?;
    let bar = beam_bar(i);
    let mapping = find_hypergraph_isomorphism(&bar, &next);
    r.steps.push(Step::HypergraphIso {
        from: format!("B-bar{} {}", i + 1, edge_list(&bar)),
        to: format!("B{} {}", i + 1, edge_list(&next)),
        mapping: mapping.as_ref().map(|m| {
            m.iter().enumerate().map(|(x, &y)| (bar.vertex_name(x).to_string(), next.vertex_name(y).to_string())).collect()
        }),
        ok: mapping.is_some(),
    });
    let base = hg(&bi)?;
    let target = hg(&bar)?;
    let u = |m: usize| base.gen_index(m - 1);
    let quoted: [(&str, [usize; 3]); 9] = [
        ("alpha1", [1, 1, 1]),
        ("alpha2", [2, 2, 3]),
        ("alpha3", [3, 3, 2]),
        ("alpha4", [4, 4, 1]),
        ("alpha5", [5, 5, 3]),
        ("alpha6", [6, 6, 2]),
        ("beta1.1", [4, 1, 4]),
        ("beta1.2", [3, 6, 5]),
        ("beta1.3", [2, 5, 6]),
    ];
    let mut gens: Vec<(String, Tuple, usize)> = Vec::new();
    let mut add = |name: String, t: [usize; 3]| {
        let img = target.gen_index(bar.vertex_index(&name).expect("named in the recursion"));
        gens.push((name, t.iter().map(|&m| u(m)).collect(), img));
    };
    for (name, t) in quoted {
        add(name.to_string(), t);
    }
    for j in 2..=i {
        let col = beam_column(j);
        for k in 1..=3 {
            let m = 3 * j + k;
            add(format!("beta{j}.{k}"), [m, m, BEAM_MATRIX[k - 1][col]]);
        }
    }
    r.steps.push(Step::Construction(construct(
        Construction {
            label: format!("A_{i}/J_{i} onto S_H for B-bar{}", i + 1),
            base_name: format!("S_B{i}"),
            base: base.into_semiring(),
            arity: 3,
            gens,
            shape: IdealShape::SomeCoordinateZero,
            target_name: format!("S_H for B-bar{}", i + 1),
            target: target.semiring(),
        },
        cfg,
    )));
    Ok(r)
}

/// The `i`-th chain identity, as displayed where it is displayed.
fn chain_identity(i: usize) -> Result<Identity, ConstructionError> {
    Ok(if i <= 3 { builtin_identity(&format!("eq4.{i}"))? } else { nested_identity(i) })
}

fn nested_chain(kind: &WitnessKind, i: usize, cfg: &WitnessConfig) -> Result<WitnessReport, ConstructionError> {
    if i == 0 {
        return Err(ConstructionError::Precondition("nested_chain index starts at 1".into()));
    }
    let mut r = WitnessReport::new(
        kind,
        format!("i={i}"),
        format!("V(S_N{i}) is strictly contained in V(S_N{}): a subsemiring, separated by the chain identity", i + 1),
    );
    let small = hg(&family(FamilyKind::Nested, i)?)?;
    let big = hg(&family(FamilyKind::Nested, i + 1)?)?;
    // dropping the first triangle of the larger member leaves an induced copy
    let seed: Vec<(usize, usize)> =
        (0..small.source().vertex_count()).map(|v| (small.gen_index(v), big.gen_index(v + 3))).collect();
    r.steps.push(Step::Embedding {
        sub: format!("S_N{i}"),
        ambient: format!("S_N{}", i + 1),
        seed: "u_k to u_(k+3)".to_string(),
        ok: find_embedding(small.semiring(), big.semiring(), &seed).is_some(),
    });
    let id = chain_identity(i + 1)?;
    r.steps.push(identity_step(&format!("S_N{i}"), small.semiring(), &id, Verdict::Holds, &cfg.check));
    r.steps.push(identity_step(&format!("S_N{}", i + 1), big.semiring(), &id, Verdict::Fails, &cfg.check));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(kind: WitnessKind) -> WitnessReport {
        verify_witness(&kind, &WitnessConfig::default()).unwrap()
    }

    fn construction(r: &WitnessReport) -> &ConstructionTrace {
        r.steps
            .iter()
            .find_map(|s| match s {
                Step::Construction(t) => Some(t),
                _ => None,
            })
            .expect("has a construction")
    }

    #[test]
    fn beam_bar_matches_the_family() {
        for i in 1..=7 {
            let bar = beam_bar(i);
            assert_eq!(bar.vertex_count(), 3 * i + 6);
            assert!(find_hypergraph_isomorphism(&bar, &family(FamilyKind::Beam, i + 1).unwrap()).is_some(), "i={i}");
        }
    }

    #[test]
    fn matrix_columns_wrap() {
        assert_eq!(beam_column(1), 0);
        assert_eq!(beam_column(2), 1);
        assert_eq!(beam_column(6), 5);
        assert_eq!(beam_column(7), 0);
        // the second step's column gives beta2 = (u7,u7,u2), (u8,u8,u3), (u9,u9,u1)
        let col = beam_column(2);
        assert_eq!([BEAM_MATRIX[0][col], BEAM_MATRIX[1][col], BEAM_MATRIX[2][col]], [2, 3, 1]);
    }

    #[test]
    fn triangle_in_abcd_succeeds() {
        let r = run(WitnessKind::TriangleInAbcd);
        assert!(r.success, "{r:#?}");
        let t = construction(&r);
        assert_eq!(t.quotient_size, Some(14));
        assert_eq!(t.seeded, Some(true));
        assert!(t.cross_check.as_deref().unwrap().starts_with("agrees"));
    }

    #[test]
    fn four_cycle_coloring_witness() {
        let r = run(WitnessKind::StrongcolorEquiv(family(FamilyKind::NCycle, 4).unwrap()));
        assert!(r.success, "{r:#?}");
        assert_eq!(construction(&r).quotient_size, Some(18));
    }

    #[test]
    fn triangle_coloring_witness_fails() {
        let r = run(WitnessKind::StrongcolorEquiv(family(FamilyKind::Beam, 1).unwrap()));
        assert!(!r.success);
        assert!(matches!(r.steps[0], Step::Robustness { robust: false, .. }));
        assert!(construction(&r).failure.is_some());
    }

    #[test]
    fn uniform_reduction_on_edge_plus_pair() {
        let h = Hypergraph::numbered(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        let r = run(WitnessKind::UniformReduction(h));
        assert!(r.success, "{r:#?}");
        assert_eq!(r.steps.len(), 1);
    }

    #[test]
    fn leaf_removal_on_pendant_triangle() {
        let h = Hypergraph::numbered(8, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1], &[1, 7, 8]]).unwrap();
        let size = build_semiring(&h).unwrap().semiring().size();
        let r = run(WitnessKind::LeafRemoval(h));
        assert!(r.success, "{r:#?}");
        assert_eq!(construction(&r).quotient_size, Some(size));
    }

    #[test]
    fn leaf_removal_disjoint_leaf() {
        let h = Hypergraph::numbered(9, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1], &[7, 8, 9]]).unwrap();
        let r = run(WitnessKind::LeafRemoval(h));
        assert!(r.success, "{r:#?}");
    }

    #[test]
    fn beam_steps() {
        for i in 1..=2 {
            let r = run(WitnessKind::BeamStep(i));
            assert!(r.success, "i={i}: {r:#?}");
        }
    }

    #[test]
    fn preconditions() {
        let cfg = WitnessConfig::default();
        let tri = family(FamilyKind::Beam, 1).unwrap();
        assert!(verify_witness(&WitnessKind::UniformReduction(tri.clone()), &cfg).is_err());
        assert!(verify_witness(&WitnessKind::LeafRemoval(tri), &cfg).is_err());
        let forest = Hypergraph::numbered(5, &[&[1, 2, 3], &[3, 4, 5]]).unwrap();
        assert!(verify_witness(&WitnessKind::LeafRemoval(forest), &cfg).is_err());
        assert!(verify_witness(&WitnessKind::BeamStep(0), &cfg).is_err());
    }

    #[test]
    fn nested_chain_first_link() {
        let r = run(WitnessKind::NestedChain(1));
        assert!(r.success, "{r:#?}");
    }
}
