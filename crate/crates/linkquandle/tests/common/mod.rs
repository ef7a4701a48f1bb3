//! Shared diagram corpus for the integration suites.

#![allow(dead_code)]

use linkquandle::caps::Caps;
use linkquandle::coloring::FiniteQuandle;
use linkquandle::diagram::LinkDiagram;
use linkquandle::lattice::{hnf, int_vec, unit_vec, LatticeBasis};
use linkquandle::tcquandle::{materialize, SubgroupFamily};

pub const HOPF: &str = "O1+ U2+ / U1+ O2+";
pub const HOPF_MIRROR: &str = "O1- U2- / U1- O2-";
pub const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";
pub const FIGURE_EIGHT: &str = "U1+ O2+ U3- O4- U2+ O1+ U4- O3-";
pub const VIRTUAL_TREFOIL: &str = "O1+ O2+ U1+ U2+";
pub const VIRTUAL_HOPF: &str = "O1+ / U1+";
pub const UNKNOT: &str = "*";
pub const UNLINK2: &str = "* / *";

pub fn parse(text: &str) -> LinkDiagram {
    LinkDiagram::parse(text).expect("corpus codes are valid")
}

/// Two-component diagrams with their expected linking numbers
/// (l12 = crossings of component 1 over component 2, l21 the reverse).
/// Spans all divisibility patterns against every n in 2..=6.
pub fn two_component_corpus() -> Vec<(&'static str, i64, i64)> {
    vec![
        (HOPF, 1, 1),
        (HOPF_MIRROR, -1, -1),
        (UNLINK2, 0, 0),
        (VIRTUAL_HOPF, 1, 0),
        // (2,2) torus-style clasps.
        ("O1+ U2+ O3+ U4+ / U1+ O2+ U3+ O4+", 2, 2),
        ("O1- U2- O3- U4- / U1- O2- U3- O4-", -2, -2),
        // One-directional virtual multiples.
        ("O1+ O2+ / U1+ U2+", 2, 0),
        ("O1+ O2+ O3+ / U1+ U2+ U3+", 3, 0),
        // Mixed magnitudes.
        ("O1+ U2+ O3+ / U1+ O2+ U3+", 2, 1),
        ("O1+ U2+ O3+ U4+ O5+ U6+ / U1+ O2+ U3+ O4+ U5+ O6+", 3, 3),
        ("O1- U2+ / U1- O2+", -1, 1),
        ("O1+ U2+ O3+ U4+ O5+ O6+ / U1+ O2+ U3+ O4+ U5+ U6+", 4, 2),
    ]
}

/// The 4-component chain whose consecutive pairs are clasped with the
/// given signs: linking graph is the path 1-2-3-4 with those weights.
pub fn chain4(s: [i8; 3]) -> LinkDiagram {
    let t = |s: i8| if s > 0 { "+" } else { "-" };
    let code = format!(
        "O1{a} U2{a} / U1{a} O2{a} O3{b} U4{b} / U3{b} O4{b} O5{c} U6{c} / U5{c} O6{c}",
        a = t(s[0]),
        b = t(s[1]),
        c = t(s[2])
    );
    parse(&code)
}

/// Every named corpus diagram plus one chain, for invariance sweeps.
pub fn full_corpus() -> Vec<LinkDiagram> {
    let mut all: Vec<LinkDiagram> = [
        HOPF,
        HOPF_MIRROR,
        TREFOIL,
        FIGURE_EIGHT,
        VIRTUAL_TREFOIL,
        VIRTUAL_HOPF,
        UNKNOT,
        UNLINK2,
    ]
    .iter()
    .map(|t| parse(t))
    .collect();
    all.extend(two_component_corpus().iter().map(|(t, _, _)| parse(t)));
    all.push(chain4([1, 1, 1]));
    all.push(chain4([1, -1, 1]));
    all
}

fn diag_basis(m: usize, b: usize, extra: &[&[i64]]) -> LatticeBasis {
    let mut gens = vec![unit_vec(m, b)];
    gens.extend(extra.iter().map(|r| int_vec(r)));
    hnf(m, &gens)
}

/// A fixed 5-element translation-commutative target: orbits of size 2
/// and 3.
pub fn fixed_target_a() -> FiniteQuandle {
    let family = SubgroupFamily::new(vec![
        diag_basis(2, 0, &[&[0, 2]]),
        diag_basis(2, 1, &[&[3, 0]]),
    ])
    .unwrap();
    materialize(&family).unwrap()
}

/// A fixed 6-element translation-commutative target with three orbits
/// of sizes 1, 2, 3.
pub fn fixed_target_b() -> FiniteQuandle {
    let family = SubgroupFamily::new(vec![
        diag_basis(3, 0, &[&[0, 1, 0], &[0, 0, 1]]),
        diag_basis(3, 1, &[&[2, 0, 0], &[0, 0, 1]]),
        diag_basis(3, 2, &[&[3, 0, 0], &[0, 1, 0]]),
    ])
    .unwrap();
    materialize(&family).unwrap()
}

pub fn caps() -> Caps {
    Caps::default()
}
