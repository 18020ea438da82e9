use super::{parse_identity, Identity, TermError};

pub const BUILTIN_NAMES: [&str; 6] = ["eq3.1", "eq4.1", "eq4.2", "eq4.3", "eq4.4", "nested:<i>"];

const TRIANGLE: &str = "x1*x2*x3 + x3*x4*x5 + x5*x6*x1 = (x1+x4)*(x2+x5)*(x3+x6)";
const FOUR_BY_FOUR: &str = "x1*x2*x3*x4 = y1*y2*y3*y4";

// p_j and q_j exactly as displayed for j = 1, 2, 3
const P: [&str; 3] = [
    "x1*x6*x2 + x2*x4*x3 + x3*x5*x1",
    "x4*x9*x5 + x5*x7*x6 + x6*x8*x4",
    "x7*x12*x8 + x8*x10*x9 + x9*x11*x7",
];
const Q: [&str; 3] = [
    "(x1+x4)*(x2+x5)*(x3+x6)",
    "(x4+x7)*(x5+x8)*(x6+x9)",
    "(x7+x10)*(x8+x11)*(x9+x12)",
];

fn displayed_chain(i: usize) -> Identity {
    let lhs = P[..i].join(" + ");
    let rhs = Q[..i].join(" + ");
    parse_identity(&format!("{lhs} = {rhs}")).expect("registry identity parses")
}

/// `Σ_{j≤i} p_j = Σ_{j≤i} q_j` from the general index formulas.
pub fn nested_identity(i: usize) -> Identity {
    assert!(i >= 1, "nested identity index starts at 1");
    let x = |k: usize| format!("x{k}");
    let mut ps = Vec::new();
    let mut qs = Vec::new();
    for j in 1..=i {
        ps.push(format!(
            "{}*{}*{} + {}*{}*{} + {}*{}*{}",
            x(3 * j - 1),
            x(3 * j + 3),
            x(3 * j - 2),
            x(3 * j - 2),
            x(3 * j + 2),
            x(3 * j),
            x(3 * j),
            x(3 * j + 1),
            x(3 * j - 1)
        ));
        qs.push(format!(
            "({}+{})*({}+{})*({}+{})",
            x(3 * j - 1),
            x(3 * j + 2),
            x(3 * j - 2),
            x(3 * j + 1),
            x(3 * j),
            x(3 * j + 3)
        ));
    }
    parse_identity(&format!("{} = {}", ps.join(" + "), qs.join(" + "))).expect("generated identity parses")
}

pub fn builtin_identity(name: &str) -> Result<Identity, TermError> {
    match name {
        "eq3.1" => parse_identity(TRIANGLE),
        "eq4.1" => Ok(displayed_chain(1)),
        "eq4.2" => Ok(displayed_chain(2)),
        "eq4.3" => Ok(displayed_chain(3)),
        "eq4.4" => parse_identity(FOUR_BY_FOUR),
        _ => match name.strip_prefix("nested:").map(str::parse::<usize>) {
            Some(Ok(i)) if i >= 1 => Ok(nested_identity(i)),
            _ => Err(TermError::UnknownIdentity(name.to_string())),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn monomial_multisets(id: &Identity) -> (BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>) {
        let sorted = |t: &super::super::Term| -> BTreeSet<Vec<usize>> {
            t.monomials(10_000)
                .unwrap()
                .into_iter()
                .map(|mut m| {
                    m.sort_unstable();
                    m
                })
                .collect()
        };
        (sorted(&id.lhs), sorted(&id.rhs))
    }

    #[test]
    fn displayed_and_general_forms_agree_up_to_commutativity() {
        for i in 1..=3 {
            let shown = builtin_identity(&format!("eq4.{i}")).unwrap();
            let general = nested_identity(i);
            assert_eq!(shown.variables, general.variables);
            assert_eq!(monomial_multisets(&shown), monomial_multisets(&general));
            assert_ne!(shown, general, "orders differ as written");
        }
    }

    #[test]
    fn first_nested_identity() {
        let id = nested_identity(1);
        assert_eq!(id.var_count(), 6);
        assert_eq!(
            id.display_term(&id.lhs),
            "x2*x6*x1 + x1*x5*x3 + x3*x4*x2"
        );
        assert_eq!(nested_identity(4).var_count(), 15);
    }

    #[test]
    fn names_resolve() {
        for n in ["eq3.1", "eq4.1", "eq4.2", "eq4.3", "eq4.4", "nested:2"] {
            assert!(builtin_identity(n).is_ok(), "{n}");
        }
        assert!(builtin_identity("nested:0").is_err());
        assert!(builtin_identity("eq9.9").is_err());
    }
}
