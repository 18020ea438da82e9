//! The acceptance battery behind `hgring suite`. Every check is a pure
//! function of fixed seeds, so reports are byte-identical across runs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coloring::{enumerate_strong_colorings, is_2_robust, RobustnessFailure};
use crate::constructions::{find_embedding, verify_witness, Step, WitnessConfig, WitnessKind};
use crate::hg_semiring::build_semiring;
use crate::hypergraph::{family, random_hyperforest, random_hypergraph, FamilyKind, Girth, Hypergraph};
use crate::semiring::FiniteSemiring;
use crate::terms::{
    builtin_identity, check_identity_bruteforce, check_identity_flat, parse_identity, CheckConfig, Identity, Method,
};
use crate::words::{build_sc_from_str, builtin_s7};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub criterion: u8,
    pub name: String,
    pub claim: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SuiteConfig {
    pub check: CheckConfig,
    pub witness: WitnessConfig,
}

pub const CRITERIA: [u8; 5] = [1, 2, 3, 4, 5];

pub fn run_suite(cfg: &SuiteConfig) -> Vec<SuiteCheck> {
    CRITERIA.iter().flat_map(|&c| run_criterion(c, cfg)).collect()
}

pub fn run_criterion(criterion: u8, cfg: &SuiteConfig) -> Vec<SuiteCheck> {
    match criterion {
        1 => identity_separations(cfg),
        2 => coloring_results(),
        3 => witness_pipelines(cfg),
        4 => structural_certificates(),
        5 => property_suites(cfg),
        _ => Vec::new(),
    }
}

fn check(criterion: u8, name: impl Into<String>, claim: &str, pass: bool, detail: impl Into<String>) -> SuiteCheck {
    SuiteCheck { criterion, name: name.into(), claim: claim.to_string(), pass, detail: detail.into() }
}

fn sc(spec: &str) -> FiniteSemiring {
    build_sc_from_str(spec).expect("fixed word sets")
}

fn family_semiring(kind: FamilyKind, i: usize) -> FiniteSemiring {
    build_semiring(&family(kind, i).expect("supported member")).expect("families are admissible").into_semiring()
}

fn verdict_check(
    name: &str,
    claim: &str,
    s: &FiniteSemiring,
    id_name: &str,
    expect_holds: bool,
    method: Method,
    cfg: &CheckConfig,
) -> SuiteCheck {
    let id = builtin_identity(id_name).expect("registry identity");
    let result = match method {
        Method::Flat => check_identity_flat(s, &id, cfg),
        Method::BruteForce => check_identity_bruteforce(s, &id, cfg),
    };
    match result {
        Ok(r) => {
            let detail = match r.named_counterexample(&id, s) {
                Some(cx) => {
                    let parts: Vec<String> = cx.iter().map(|(v, e)| format!("{v}={e}")).collect();
                    format!("fails at {}; {} nodes", parts.join(" "), r.nodes)
                }
                None => format!("holds; {} nodes", r.nodes),
            };
            check(1, name, claim, r.holds() == expect_holds, detail)
        }
        Err(e) => check(1, name, claim, false, e.to_string()),
    }
}

fn identity_separations(cfg: &SuiteConfig) -> Vec<SuiteCheck> {
    let c = &cfg.check;
    let abc = sc("abc");
    let abcd = sc("abcd");
    let triangle = build_semiring(&family(FamilyKind::Beam, 1).expect("triangle")).expect("admissible");
    let n1 = family_semiring(FamilyKind::Nested, 1);
    let n2 = family_semiring(FamilyKind::Nested, 2);
    let n3 = family_semiring(FamilyKind::Nested, 3);
    let s7 = builtin_s7();
    let sep = "S_c(abc) and the triangle semiring are separated by the triangle identity";
    let chain = "the nested chain identities separate consecutive nested-type semirings";
    let four = "the four-letter identity separates S_7 and S_c(abcd) from the nested-type semirings";
    let mut out = vec![
        verdict_check("sc_abc satisfies eq3.1", sep, &abc, "eq3.1", true, Method::Flat, c),
        verdict_check("triangle fails eq3.1", sep, triangle.semiring(), "eq3.1", false, Method::Flat, c),
    ];
    let id = builtin_identity("eq3.1").expect("registry identity");
    let gens: Vec<usize> = (0..6).map(|v| triangle.gen_index(v)).collect();
    let (l, r) = id.eval_sides(triangle.semiring(), &gens);
    out.push(check(
        1,
        "generator assignment separates eq3.1 on the triangle",
        sep,
        l != r,
        format!(
            "x_i = a·u_i gives {} against {}",
            triangle.semiring().label(l),
            triangle.semiring().label(r)
        ),
    ));
    out.extend([
        verdict_check("nested1 satisfies eq4.2", chain, &n1, "eq4.2", true, Method::Flat, c),
        verdict_check("nested2 fails eq4.2", chain, &n2, "eq4.2", false, Method::Flat, c),
        verdict_check("nested2 satisfies eq4.3", chain, &n2, "eq4.3", true, Method::Flat, c),
        verdict_check("nested3 fails eq4.3", chain, &n3, "eq4.3", false, Method::Flat, c),
        verdict_check("s7 satisfies eq4.2 by brute force", four, &s7, "eq4.2", true, Method::BruteForce, c),
        verdict_check("s7 fails eq4.4", four, &s7, "eq4.4", false, Method::BruteForce, c),
        verdict_check("nested2 satisfies eq4.4", four, &n2, "eq4.4", true, Method::Flat, c),
        verdict_check("sc_abcd fails eq4.4", four, &abcd, "eq4.4", false, Method::Flat, c),
    ]);
    out
}

/// Fixed so reports can be diffed across runs.
const FOREST_SEED: u64 = 11;

/// Five 3-hyperforests with 1 to 10 edges.
pub fn sample_hyperforests() -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(FOREST_SEED);
    (0..5)
        .map(|_| {
            let edges = rng.gen_range(1..=10);
            random_hyperforest(&mut rng, edges)
        })
        .collect()
}

fn coloring_results() -> Vec<SuiteCheck> {
    let claim_tri = "the triangle is not 2-robustly strong 3-colorable";
    let claim_cycle = "every n-cycle with n at least 4 is 2-robustly strong 3-colorable";
    let claim_forest = "every 3-hyperforest is 2-robustly strong 3-colorable";
    let mut out = Vec::new();
    let tri = family(FamilyKind::Beam, 1).expect("triangle");
    let r = is_2_robust(&tri);
    let want = Some(RobustnessFailure { pair: (0, 3), colors: (0, 1) });
    let detail = match &r.failure {
        Some(f) => format!(
            "{{{},{}}} colored ({},{}) has no extension",
            tri.vertex_name(f.pair.0),
            tri.vertex_name(f.pair.1),
            f.colors.0,
            f.colors.1
        ),
        None => "robust".to_string(),
    };
    out.push(check(2, "triangle not 2-robust at {u1,u4} with (0,1)", claim_tri, !r.robust && r.failure == want, detail));
    for n in 4..=8 {
        let h = family(FamilyKind::NCycle, n).expect("cycle");
        let r = is_2_robust(&h);
        let colorable = !enumerate_strong_colorings(&h).is_empty();
        let pass = r.robust && colorable && h.girth() != Girth::Finite(3);
        out.push(check(2, format!("n_cycle({n}) is 2-robust"), claim_cycle, pass, format!("{} partial colorings extended", r.partials_checked)));
    }
    for (k, h) in sample_hyperforests().into_iter().enumerate() {
        let r = is_2_robust(&h);
        out.push(check(
            2,
            format!("random hyperforest {} ({} edges) is 2-robust", k + 1, h.edge_count()),
            claim_forest,
            r.robust && h.girth().is_infinite(),
            format!("{} partial colorings extended", r.partials_checked),
        ));
    }
    out
}

fn witness_pipelines(cfg: &SuiteConfig) -> Vec<SuiteCheck> {
    let pendant = Hypergraph::numbered(8, &[&[1, 2, 3], &[3, 4, 5], &[5, 6, 1], &[1, 7, 8]]).expect("fixed");
    let kinds = [WitnessKind::TriangleInAbcd,
        WitnessKind::StrongcolorEquiv(family(FamilyKind::NCycle, 4).expect("cycle")),
        WitnessKind::UniformReduction(Hypergraph::numbered(5, &[&[1, 2, 3], &[4, 5]]).expect("fixed")),
        WitnessKind::LeafRemoval(pendant),
        WitnessKind::BeamStep(1),
        WitnessKind::BeamStep(2),
        WitnessKind::BeamStep(3)];
    kinds
        .iter()
        .map(|k| match verify_witness(k, &cfg.witness) {
            Ok(r) => {
                let sizes: Vec<String> = r
                    .steps
                    .iter()
                    .filter_map(|s| match s {
                        Step::Construction(t) => Some(format!(
                            "|A\\J|={} |A/J|={} target={}",
                            t.complement_size.unwrap_or(0),
                            t.quotient_size.unwrap_or(0),
                            t.target_size
                        )),
                        _ => None,
                    })
                    .collect();
                let detail = match &r.failure {
                    Some(f) => f.clone(),
                    None => sizes.join("; "),
                };
                check(3, format!("{} {}", r.kind, r.params).trim().to_string(), &r.claim, r.success, detail)
            }
            Err(e) => check(3, k.name(), "the witness construction runs", false, e.to_string()),
        })
        .collect()
}

pub fn certificate_members() -> Vec<(String, Hypergraph)> {
    let mut out = Vec::new();
    for (kind, range) in [
        (FamilyKind::Beam, 1..=3),
        (FamilyKind::Fan, 1..=3),
        (FamilyKind::Nested, 1..=3),
        (FamilyKind::NCycle, 3..=8),
    ] {
        for i in range {
            out.push((format!("{kind}({i})"), family(kind, i).expect("supported member")));
        }
    }
    out.push(("single edge".to_string(), Hypergraph::numbered(3, &[&[1, 2, 3]]).expect("fixed")));
    out
}

fn structural_certificates() -> Vec<SuiteCheck> {
    let claim = "hypergraph semirings are 0-cancellative, flat, and certified subdirectly irreducible";
    certificate_members()
        .into_iter()
        .map(|(name, h)| {
            let hs = match build_semiring(&h) {
                Ok(hs) => hs,
                Err(e) => return check(4, name, claim, false, e.to_string()),
            };
            let s = hs.semiring();
            let axioms = s.verify_axioms().all_pass();
            let flat = s.is_flat();
            let cancel = matches!(s.is_zero_cancellative(), Ok(None));
            let cert = s.subdirect_certificate();
            let top = cert.annihilators == [hs.top_index()];
            let pass = axioms && flat && cancel && cert.granted && top;
            let detail = format!(
                "{} elements; axioms {axioms}, flat {flat}, 0-cancellative {cancel}, certificate {}, annihilator Top {top}",
                s.size(),
                cert.granted
            );
            check(4, name, claim, pass, detail)
        })
        .collect()
}

/// Random term over `x1..x<vars>` as text.
fn random_term(rng: &mut ChaCha8Rng, vars: usize, depth: usize) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return format!("x{}", rng.gen_range(1..=vars));
    }
    let n = rng.gen_range(2..=3);
    let parts: Vec<String> = (0..n).map(|_| random_term(rng, vars, depth - 1)).collect();
    if rng.gen_bool(0.5) {
        format!("({})", parts.join(" + "))
    } else {
        parts.join("*")
    }
}

/// Mixes equations that hold everywhere (reordered or doubled sums) with
/// arbitrary pairs, so both verdicts are exercised.
pub fn random_identity(rng: &mut ChaCha8Rng) -> Identity {
    let vars = rng.gen_range(1..=5);
    let mut summands: Vec<String> = (0..rng.gen_range(1..=3)).map(|_| random_term(rng, vars, 2)).collect();
    let lhs = summands.join(" + ");
    let rhs = match rng.gen_range(0..4) {
        0 => format!("{lhs} + {lhs}"),
        1 => {
            summands.reverse();
            summands.join(" + ")
        }
        _ => random_term(rng, vars, 3),
    };
    parse_identity(&format!("{lhs} = {rhs}")).expect("generated text parses")
}

fn oracle_pool() -> Vec<(&'static str, FiniteSemiring)> {
    vec![
        ("S_c(abc)", sc("abc")),
        ("S_c(ab,bc)", sc("ab,bc")),
        ("S_7", builtin_s7()),
        ("single edge", build_semiring(&Hypergraph::numbered(3, &[&[1, 2, 3]]).expect("fixed")).expect("ok").into_semiring()),
        ("triangle", family_semiring(FamilyKind::Beam, 1)),
    ]
}

fn property_suites(cfg: &SuiteConfig) -> Vec<SuiteCheck> {
    let mut out = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let mut mismatches = Vec::new();
    let mut linear = 0;
    for k in 0..200 {
        let n = rng.gen_range(4..=9);
        let m = rng.gen_range(1..=6);
        let h = random_hypergraph(&mut rng, n, m);
        let girth_ok = match h.girth() {
            Girth::Finite(g) => g >= 3,
            Girth::Infinite => true,
        };
        linear += usize::from(h.is_linear());
        if h.is_linear() != girth_ok {
            mismatches.push(k);
        }
    }
    out.push(check(
        5,
        "linearity iff girth at least 3 on 200 random hypergraphs",
        "a loop-free hypergraph is linear iff its girth is at least 3",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{linear} linear, {} not", 200 - linear)
        } else {
            format!("mismatches at samples {mismatches:?}")
        },
    ));

    let pool = oracle_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(502);
    let mut disagreements = Vec::new();
    let (mut holds, mut fails) = (0, 0);
    for k in 0..50 {
        let (name, s) = pool.choose(&mut rng).expect("non-empty pool");
        let id = random_identity(&mut rng);
        let flat = check_identity_flat(s, &id, &cfg.check);
        let brute = check_identity_bruteforce(s, &id, &cfg.check);
        match (flat, brute) {
            (Ok(f), Ok(b)) if f.verdict == b.verdict => {
                if f.holds() {
                    holds += 1;
                } else {
                    fails += 1;
                }
            }
            (f, b) => disagreements.push(format!("#{k} {name} {id}: flat {:?} brute {:?}", f.map(|r| r.verdict), b.map(|r| r.verdict))),
        }
    }
    out.push(check(
        5,
        "flat checker agrees with brute force on 50 random instances",
        "the flat propagation search decides identities exactly",
        disagreements.is_empty(),
        if disagreements.is_empty() { format!("{holds} hold, {fails} fail") } else { disagreements.join("; ") },
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(503);
    let mut bad = 0;
    for _ in 0..10_000 {
        let (_, s) = pool.choose(&mut rng).expect("non-empty pool");
        let zero = s.zero().expect("flat pool has zero");
        let k = rng.gen_range(2..=5);
        let xs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..s.size())).collect();
        let sum = xs[1..].iter().fold(xs[0], |acc, &x| s.add(acc, x));
        let want = if xs.iter().all(|&x| x == xs[0]) { xs[0] } else { zero };
        bad += usize::from(sum != want);
    }
    out.push(check(
        5,
        "flat sum law on 10000 random sums",
        "in a flat semiring a sum is non-zero only when all summands agree",
        bad == 0,
        format!("{bad} violations"),
    ));

    let abc = sc("abc");
    let letters = ["a", "b", "c"].map(|l| abc.index_of(l).expect("letter"));
    let mut missing = Vec::new();
    let members = certificate_members();
    for (name, h) in &members {
        let hs = build_semiring(h).expect("admissible");
        let e = h.edges().iter().find(|e| e.len() == 3).expect("has a 3-edge");
        let seed: Vec<(usize, usize)> = letters.iter().zip(e).map(|(&l, &v)| (l, hs.gen_index(v))).collect();
        if find_embedding(&abc, hs.semiring(), &seed).is_none() {
            missing.push(name.clone());
        }
    }
    out.push(check(
        5,
        format!("S_c(abc) embeds in all {} built hypergraph semirings", members.len()),
        "S_c(abc) is a subsemiring of every hypergraph semiring with an edge",
        missing.is_empty(),
        if missing.is_empty() {
            "seeded on the first 3-edge of each".to_string()
        } else {
            format!("no embedding for {missing:?}")
        },
    ));
    out
}
