//! Group presentations attached to link diagrams.
//!
//! Two presentations are emitted: the arc-generated presentation of the
//! full diagram group, and the quotient that kills all triple
//! commutators, which depends only on the linking matrix. No
//! group-theoretic computation is attempted; presentations are data.
//!
//! [`saktra_condition`] decides the matching condition for symmetric
//! linking matrices: every inseparable sublink must carry a single sign
//! relating the two matrices entrywise. This is strictly weaker than
//! [`qs_isomorphic_pm`](crate::tcquandle::qs_isomorphic_pm): a global
//! per-component sign assignment restricts to every sublink, but
//! per-sublink signs need not merge into per-component ones.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::linking::{inseparable_sublinks, LinkingMatrix};

/// A word in the generators: `(generator index, exponent)` pairs,
/// 0-based, with nonzero exponents and no adjacent equal generators.
pub type Word = Vec<(usize, i64)>;

/// Merges adjacent runs of equal generators and drops zero exponents.
fn normalize(word: &[(usize, i64)]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &(g, e) in word {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lg, le)) if *lg == g => {
                *le += e;
                if *le == 0 {
                    out.pop();
                }
            }
            _ => out.push((g, e)),
        }
    }
    out
}

/// A finitely presented group: named generators and relator words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl GroupPresentation {
    /// Renders as `<name, name | word, word>`, each word a
    /// space-separated sequence of `name^exp` tokens with the exponent
    /// suffix omitted when it is 1. An empty relator list renders as
    /// `<... | >`.
    pub fn render(&self) -> String {
        let mut s = String::from("<");
        s.push_str(&self.generators.join(","));
        s.push_str(" | ");
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&(g, e)| {
                        if e == 1 {
                            self.generators[g].clone()
                        } else {
                            format!("{}^{}", self.generators[g], e)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        s.push_str(&words.join(", "));
        s.push('>');
        s
    }

    /// Exponent sum of each generator over one relator; zero columns
    /// for every relator mean the abelianization is free of rank
    /// `generators.len()`.
    pub fn exponent_sums(&self, relator: usize) -> Vec<i64> {
        let mut sums = vec![0i64; self.generators.len()];
        for &(g, e) in &self.relators[relator] {
            sums[g] += e;
        }
        sums
    }
}

impl Serialize for GroupPresentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // 1-based generator indices in the relator words.
        let relators: Vec<Vec<(usize, i64)>> = self
            .relators
            .iter()
            .map(|w| w.iter().map(|&(g, e)| (g + 1, e)).collect())
            .collect();
        let mut st = s.serialize_struct("GroupPresentation", 2)?;
        st.serialize_field("gens", &self.generators)?;
        st.serialize_field("relators", &relators)?;
        st.end()
    }
}

/// The arc-generated presentation of a diagram's group: one generator
/// per arc, named `g<component>_<arc>`, and one relator per crossing.
/// A crossing of sign `w` whose under-strand enters on arc `prev`,
/// leaves on arc `next`, and passes under arc `over` contributes
/// `next * over^-w * prev^-1 * over^w`, encoding
/// `next = over^w prev over^-w`.
pub fn wirtinger(d: &LinkDiagram) -> GroupPresentation {
    let arcs = d.arc_table();
    let mut generators = Vec::with_capacity(arcs.total_arcs());
    for (c, &k) in arcs.arc_counts.iter().enumerate() {
        for a in 0..k {
            generators.push(format!("g{}_{}", c + 1, a + 1));
        }
    }
    let mut relators = Vec::new();
    for cr in &arcs.crossings {
        let over = arcs.flat(cr.over_arc);
        let prev = arcs.flat(cr.under_in);
        let next = arcs.flat(cr.under_out);
        let w = i64::from(cr.sign);
        let word = normalize(&[(next, 1), (over, -w), (prev, -1), (over, w)]);
        if !word.is_empty() {
            relators.push(word);
        }
    }
    GroupPresentation { generators, relators }
}

/// The quotient of the diagram group by all triple commutators, which
/// is determined by the linking matrix alone. Generators `g1..gmu`, one
/// per component. Type-1 relators say each generator commutes with the
/// product `l_i = prod_{j != i} g_j^{M[i][j]}` (ascending `j`, zero
/// exponents skipped, empty products omitted); type-2 relators are
/// `[g_i, [g_j, g_k]]` for every `i` and every ordered pair `j != k`.
pub fn nilpotent3(m: &LinkingMatrix) -> GroupPresentation {
    let mu = m.mu();
    let generators: Vec<String> = (1..=mu).map(|i| format!("g{i}")).collect();
    let mut relators = Vec::new();
    for i in 0..mu {
        let lambda: Word = (0..mu)
            .filter(|&j| j != i && m.get(i, j) != 0)
            .map(|j| (j, m.get(i, j)))
            .collect();
        if lambda.is_empty() {
            continue;
        }
        let mut word = lambda.clone();
        word.push((i, 1));
        word.extend(lambda.iter().rev().map(|&(g, e)| (g, -e)));
        word.push((i, -1));
        relators.push(normalize(&word));
    }
    for i in 0..mu {
        for j in 0..mu {
            for k in 0..mu {
                if j == k {
                    continue;
                }
                let word = [
                    (i, 1),
                    (j, 1),
                    (k, 1),
                    (j, -1),
                    (k, -1),
                    (i, -1),
                    (k, 1),
                    (j, 1),
                    (k, -1),
                    (j, -1),
                ];
                let norm = normalize(&word);
                if !norm.is_empty() {
                    relators.push(norm);
                }
            }
        }
    }
    GroupPresentation { generators, relators }
}

/// Sign mode for [`saktra_condition`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaktraMode {
    /// Compare components by their given indices.
    Fixed,
    /// Additionally search over component re-indexings.
    Search,
}

/// A satisfied matching condition: the optional re-indexing (0-based,
/// `None` in fixed mode) and one sign per inseparable sublink, the
/// sublinks listed as sorted 1-based component sets in lexicographic
/// order. Serializes with a 1-based permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaktraCertificate {
    pub perm: Option<Vec<usize>>,
    pub sublinks: Vec<(Vec<usize>, i8)>,
}

impl Serialize for SaktraCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'e> {
            components: &'e [usize],
            sign: i8,
        }
        let perm1: Option<Vec<usize>> =
            self.perm.as_ref().map(|p| p.iter().map(|&x| x + 1).collect());
        let entries: Vec<Entry> = self
            .sublinks
            .iter()
            .map(|(s, sign)| Entry { components: s, sign: *sign })
            .collect();
        let mut st = s.serialize_struct("SaktraCertificate", 2)?;
        st.serialize_field("perm", &perm1)?;
        st.serialize_field("sublinks", &entries)?;
        st.end()
    }
}

fn require_symmetric(name: &str, m: &LinkingMatrix) -> Result<()> {
    for i in 0..m.mu() {
        for j in i + 1..m.mu() {
            if m.get(i, j) != m.get(j, i) {
                return Err(Error::NotSymmetric(format!(
                    "{name} matrix at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Tries to assign one sign per inseparable sublink of `a` under the
/// component map `f`; `None` when some sublink admits no sign.
fn sublink_signs(
    a: &LinkingMatrix,
    b: &LinkingMatrix,
    f: &[usize],
    sublinks: &[Vec<usize>],
) -> Option<Vec<(Vec<usize>, i8)>> {
    let mut out = Vec::with_capacity(sublinks.len());
    for s in sublinks {
        let mut sign = 0i8;
        let mut ok = true;
        'scan: for &j in s {
            for &k in s {
                let x = a.get(j - 1, k - 1);
                let y = b.get(f[j - 1], f[k - 1]);
                if y == 0 {
                    if x != 0 {
                        ok = false;
                        break 'scan;
                    }
                    continue;
                }
                if x.abs() != y.abs() {
                    ok = false;
                    break 'scan;
                }
                let this = if x == y { 1 } else { -1 };
                if sign == 0 {
                    sign = this;
                } else if sign != this {
                    ok = false;
                    break 'scan;
                }
            }
        }
        if !ok {
            return None;
        }
        out.push((s.clone(), if sign == 0 { 1 } else { sign }));
    }
    Some(out)
}

/// Decides whether two symmetric linking matrices agree up to one sign
/// per inseparable sublink of the first. In fixed mode components are
/// compared by index; in search mode a re-indexing is also sought, and
/// the lexicographically least one is returned. Matrices must be
/// symmetric and of equal size; the search and the sublink enumeration
/// are capped.
pub fn saktra_condition(
    a: &LinkingMatrix,
    b: &LinkingMatrix,
    mode: SaktraMode,
    caps: &Caps,
) -> Result<Option<SaktraCertificate>> {
    require_symmetric("first", a)?;
    require_symmetric("second", b)?;
    if a.mu() != b.mu() {
        return Err(Error::Precondition(format!(
            "matrices have {} and {} components",
            a.mu(),
            b.mu()
        )));
    }
    let mu = a.mu();
    let sublinks = inseparable_sublinks(a, caps)?;
    let identity: Vec<usize> = (0..mu).collect();
    match mode {
        SaktraMode::Fixed => Ok(sublink_signs(a, b, &identity, &sublinks)
            .map(|signs| SaktraCertificate { perm: None, sublinks: signs })),
        SaktraMode::Search => {
            if mu > caps.max_mu {
                return Err(Error::CapExceeded(format!(
                    "re-indexing search over {mu} components (cap {})",
                    caps.max_mu
                )));
            }
            // Lexicographic generation makes the first hit the least.
            for perm in itertools::Itertools::permutations(0..mu, mu) {
                if let Some(signs) = sublink_signs(a, b, &perm, &sublinks) {
                    return Ok(Some(SaktraCertificate {
                        perm: Some(perm),
                        sublinks: signs,
                    }));
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linking::linking_matrix;

    fn caps() -> Caps {
        Caps::default()
    }

    fn lm(rows: &[&[i64]]) -> LinkingMatrix {
        LinkingMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn normalize_merges_runs_and_cancels() {
        assert_eq!(normalize(&[(0, 1), (0, 2), (1, -1)]), vec![(0, 3), (1, -1)]);
        assert_eq!(normalize(&[(0, 1), (0, -1)]), Vec::<(usize, i64)>::new());
        assert_eq!(normalize(&[(0, 1), (1, 0), (0, 2)]), vec![(0, 3)]);
    }

    #[test]
    fn wirtinger_of_unknot_and_hopf() {
        let unknot = LinkDiagram::parse("*").unwrap();
        let p = wirtinger(&unknot);
        assert_eq!(p.generators, vec!["g1_1"]);
        assert!(p.relators.is_empty());
        assert_eq!(p.render(), "<g1_1 | >");

        let hopf = LinkDiagram::parse("O1+ U2+ / U1+ O2+").unwrap();
        let p = wirtinger(&hopf);
        assert_eq!(p.generators, vec!["g1_1", "g2_1"]);
        assert_eq!(p.relators.len(), 2);
        // Single-arc components turn both relations into commutators.
        assert_eq!(p.relators[0], vec![(1, 1), (0, -1), (1, -1), (0, 1)]);
        assert_eq!(p.relators[1], vec![(0, 1), (1, -1), (0, -1), (1, 1)]);
    }

    #[test]
    fn wirtinger_of_trefoil() {
        let trefoil = LinkDiagram::parse("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        let p = wirtinger(&trefoil);
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relators.len(), 3);
        for r in &p.relators {
            assert_eq!(r.len(), 4, "standard shape: {r:?}");
        }
        // Each relator identifies two arc generators and conjugates by
        // a third, so its total exponent sum vanishes and the
        // abelianization is Z.
        for i in 0..p.relators.len() {
            assert_eq!(p.exponent_sums(i).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn wirtinger_counts_follow_the_arc_table() {
        let d = LinkDiagram::parse("O1+ U2+ O3- / U1+ O2+ U3-").unwrap();
        let arcs = d.arc_table();
        let p = wirtinger(&d);
        assert_eq!(p.generators.len(), arcs.total_arcs());
        assert_eq!(p.relators.len(), d.crossing_count());
    }

    #[test]
    fn nilpotent3_of_hopf_matches_golden_shape() {
        let p = nilpotent3(&lm(&[&[0, 1], &[1, 0]]));
        assert_eq!(p.generators, vec!["g1", "g2"]);
        // Two type-1 commutators, then 2*2 type-2 relators.
        assert_eq!(p.relators.len(), 2 + 4);
        assert_eq!(p.relators[0], vec![(1, 1), (0, 1), (1, -1), (0, -1)]);
        assert_eq!(p.relators[1], vec![(0, 1), (1, 1), (0, -1), (1, -1)]);
        assert!(p.render().starts_with("<g1,g2 | g2 g1 g2^-1 g1^-1, g1 g2 g1^-1 g2^-1, "));
    }

    #[test]
    fn nilpotent3_zero_matrix_and_knot() {
        let zero = nilpotent3(&lm(&[&[0, 0], &[0, 0]]));
        assert_eq!(zero.relators.len(), 4); // type-2 only
        let knot = nilpotent3(&lm(&[&[0]]));
        assert_eq!(knot.generators, vec!["g1"]);
        assert!(knot.relators.is_empty());
        assert_eq!(knot.render(), "<g1 | >");
    }

    #[test]
    fn nilpotent3_lambda_uses_exponents_ascending() {
        let p = nilpotent3(&lm(&[&[0, 2, -1], &[2, 0, 0], &[-1, 0, 0]]));
        // lambda_1 = g2^2 g3^-1.
        assert_eq!(
            p.relators[0],
            vec![(1, 2), (2, -1), (0, 1), (2, 1), (1, -2), (0, -1)]
        );
    }

    #[test]
    fn abelianizations_are_free_of_rank_mu() {
        let diagrams = [
            "O1+ U2+ / U1+ O2+",
            "O1+ U2+ O3+ U1+ O2+ U3+",
            "O1+ O2+ U1+ U2+",
            "O1- U1- O2+ U2+",
        ];
        for text in diagrams {
            let d = LinkDiagram::parse(text).unwrap();
            // One component per generator: every relator has exponent
            // sum zero in each generator separately.
            let p = nilpotent3(&linking_matrix(&d));
            for i in 0..p.relators.len() {
                assert!(
                    p.exponent_sums(i).iter().all(|&s| s == 0),
                    "relator {i} of {text} has nonzero exponent sum"
                );
            }
            // Arc generators: relators only balance within a component,
            // collapsing its arcs to a single free factor.
            let w = wirtinger(&d);
            let arcs = d.arc_table();
            for i in 0..w.relators.len() {
                let sums = w.exponent_sums(i);
                for c in 0..arcs.arc_counts.len() {
                    let lo = arcs.arc_offsets[c];
                    let hi = lo + arcs.arc_counts[c];
                    assert_eq!(
                        sums[lo..hi].iter().sum::<i64>(),
                        0,
                        "relator {i} of {text}, component {c}"
                    );
                }
            }
        }
    }

    #[test]
    fn render_exponent_formatting() {
        let p = GroupPresentation {
            generators: vec!["a".into(), "b".into()],
            relators: vec![vec![(0, 2), (1, 1), (0, -3)]],
        };
        assert_eq!(p.render(), "<a,b | a^2 b a^-3>");
    }

    #[test]
    fn presentation_json_is_one_based() {
        let p = GroupPresentation {
            generators: vec!["g1".into(), "g2".into()],
            relators: vec![vec![(1, 1), (0, -1)]],
        };
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"gens":["g1","g2"],"relators":[[[2,1],[1,-1]]]}"#
        );
    }

    #[test]
    fn saktra_requires_symmetry_and_equal_size() {
        let sym = lm(&[&[0, 1], &[1, 0]]);
        let asym = lm(&[&[0, 1], &[0, 0]]);
        assert!(matches!(
            saktra_condition(&sym, &asym, SaktraMode::Fixed, &caps()),
            Err(Error::NotSymmetric(_))
        ));
        let small = lm(&[&[0]]);
        assert!(matches!(
            saktra_condition(&sym, &small, SaktraMode::Fixed, &caps()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn saktra_accepts_global_negation() {
        let a = lm(&[&[0, 1, 0], &[1, 0, 2], &[0, 2, 0]]);
        let b = lm(&[&[0, -1, 0], &[-1, 0, -2], &[0, -2, 0]]);
        let cert = saktra_condition(&a, &b, SaktraMode::Fixed, &caps())
            .unwrap()
            .unwrap();
        assert_eq!(cert.perm, None);
        for (s, sign) in &cert.sublinks {
            if s.len() > 1 {
                assert_eq!(*sign, -1, "sublink {s:?}");
            }
        }
    }

    #[test]
    fn saktra_signs_are_per_sublink() {
        // A split pair of Hopf-style links: flipping only one is fine
        // per-sublink even though no global sign works.
        let a = lm(&[
            &[0, 1, 0, 0],
            &[1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
        ]);
        let b = lm(&[
            &[0, -1, 0, 0],
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[0, 0, 1, 0],
        ]);
        let cert = saktra_condition(&a, &b, SaktraMode::Fixed, &caps())
            .unwrap()
            .unwrap();
        let pair12 = cert.sublinks.iter().find(|(s, _)| s == &vec![1, 2]).unwrap();
        let pair34 = cert.sublinks.iter().find(|(s, _)| s == &vec![3, 4]).unwrap();
        assert_eq!(pair12.1, -1);
        assert_eq!(pair34.1, 1);
    }

    #[test]
    fn saktra_rejects_magnitude_mismatch() {
        let a = lm(&[&[0, 1], &[1, 0]]);
        let b = lm(&[&[0, 2], &[2, 0]]);
        assert!(saktra_condition(&a, &b, SaktraMode::Fixed, &caps())
            .unwrap()
            .is_none());
    }

    #[test]
    fn saktra_search_finds_reindexing() {
        let a = lm(&[&[0, 3, 0], &[3, 0, 0], &[0, 0, 0]]);
        let b = lm(&[&[0, 0, 0], &[0, 0, -3], &[0, -3, 0]]);
        assert!(saktra_condition(&a, &b, SaktraMode::Fixed, &caps())
            .unwrap()
            .is_none());
        let cert = saktra_condition(&a, &b, SaktraMode::Search, &caps())
            .unwrap()
            .unwrap();
        assert_eq!(cert.perm, Some(vec![1, 2, 0]));
    }

    #[test]
    fn saktra_certificate_json() {
        let cert = SaktraCertificate {
            perm: Some(vec![1, 0]),
            sublinks: vec![(vec![1, 2], -1), (vec![1], 1)],
        };
        assert_eq!(
            serde_json::to_string(&cert).unwrap(),
            r#"{"perm":[2,1],"sublinks":[{"components":[1,2],"sign":-1},{"components":[1],"sign":1}]}"#
        );
    }
}
