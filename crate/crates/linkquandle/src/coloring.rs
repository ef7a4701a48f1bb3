//! Finite quandles and coloring counts of diagrams.
//!
//! A finite quandle is a table `t[x][y] = x ▷ y` on `{0, .., n-1}`
//! satisfying idempotence, bijectivity of every right translation
//! `β_y = (- ▷ y)`, and right self-distributivity. The quandle is
//! translation-commutative when all the `β_y` commute, equivalently when
//! `(x ▷ y) ▷ z = (x ▷ z) ▷ y` for all triples.
//!
//! A coloring of a diagram assigns an element to every arc so that at
//! each crossing the outgoing under-arc is the incoming one acted on by
//! the over-arc: with crossing sign `+1`, `out = in ▷ over`; with sign
//! `-1`, `in = out ▷ over`. Three counters are provided:
//!
//! * [`count_homs_bruteforce`] enumerates all arc assignments,
//! * [`count_homs_tc_propagate`] (translation-commutative targets only)
//!   assigns one seed per component and propagates it around, checking
//!   that each component closes up,
//! * [`count_homs_tc_fixedpoint`] (translation-commutative targets only)
//!   needs just the linking matrix: it counts tuples `(t_1, .., t_mu)`
//!   where each `t_i` is fixed by the product of the other components'
//!   translations raised to their linking numbers.
//!
//! The text form of a table is one line with `n` followed by `n` lines
//! of `n` entries.

use crate::caps::Caps;
use crate::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::linking::LinkingMatrix;

/// A finite quandle given by its operation table.
///
/// Construction checks only the shape (square, entries in range); run
/// [`check_axioms`] to verify the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuandle {
    table: Vec<Vec<usize>>,
    /// Orbit index of each element, when the table was built from a
    /// family with known orbits. Purely informational.
    orbit_of: Option<Vec<usize>>,
}

/// First failure of the quandle axioms found in a table, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `x ▷ x != x`.
    Idempotence { x: usize },
    /// The translation by `y` repeats a value, so it is not a bijection.
    TranslationNotBijective { y: usize },
    /// `(x ▷ y) ▷ z != (x ▷ z) ▷ (y ▷ z)`.
    SelfDistributivity { x: usize, y: usize, z: usize },
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::Idempotence { x } => write!(f, "idempotence fails at {x}"),
            AxiomViolation::TranslationNotBijective { y } => {
                write!(f, "translation by {y} is not a bijection")
            }
            AxiomViolation::SelfDistributivity { x, y, z } => {
                write!(f, "self-distributivity fails at ({x}, {y}, {z})")
            }
        }
    }
}

/// Checks the three quandle axioms on a raw table, reporting the first
/// violation in scan order.
pub fn check_axioms(table: &[Vec<usize>]) -> std::result::Result<(), AxiomViolation> {
    let n = table.len();
    for x in 0..n {
        if table[x][x] != x {
            return Err(AxiomViolation::Idempotence { x });
        }
    }
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            if std::mem::replace(&mut seen[table[x][y]], true) {
                return Err(AxiomViolation::TranslationNotBijective { y });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[table[x][z]][table[y][z]] {
                    return Err(AxiomViolation::SelfDistributivity { x, y, z });
                }
            }
        }
    }
    Ok(())
}

impl FiniteQuandle {
    /// Wraps a table, checking shape and entry range only.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteQuandle> {
        let n = table.len();
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadTable(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&e) = row.iter().find(|&&e| e >= n) {
                return Err(Error::BadTable(format!("entry {e} in row {x} out of range")));
            }
        }
        Ok(FiniteQuandle { table, orbit_of: None })
    }

    pub(crate) fn with_orbits(table: Vec<Vec<usize>>, orbit_of: Vec<usize>) -> FiniteQuandle {
        FiniteQuandle { table, orbit_of: Some(orbit_of) }
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.table.len()
    }

    /// `x ▷ y`.
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// Orbit labels recorded at construction time, if any.
    pub fn recorded_orbits(&self) -> Option<&[usize]> {
        self.orbit_of.as_deref()
    }

    /// Checks the quandle axioms.
    pub fn check_axioms(&self) -> std::result::Result<(), AxiomViolation> {
        check_axioms(&self.table)
    }

    /// The translation `β_y` as a permutation array.
    pub fn translation(&self, y: usize) -> Vec<usize> {
        (0..self.size()).map(|x| self.table[x][y]).collect()
    }

    /// Inverse of the translation `β_y`. The table must pass the
    /// bijectivity axiom.
    pub fn inverse_translation(&self, y: usize) -> Vec<usize> {
        let mut inv = vec![0; self.size()];
        for x in 0..self.size() {
            inv[self.table[x][y]] = x;
        }
        inv
    }

    /// Parses the text form: first line the size, then one line per row.
    pub fn parse_table(text: &str) -> Result<FiniteQuandle> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::BadTable("empty table file".into()))?
            .parse()
            .map_err(|_| Error::BadTable("first line must be the size".into()))?;
        let mut table = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::BadTable(format!("missing row {i}")))?;
            let row: std::result::Result<Vec<usize>, _> =
                line.split_whitespace().map(str::parse).collect();
            let row = row.map_err(|_| Error::BadTable(format!("row {i} is not integers")))?;
            table.push(row);
        }
        if let Some(extra) = lines.next() {
            return Err(Error::BadTable(format!("unexpected trailing line {extra:?}")));
        }
        FiniteQuandle::from_table(table)
    }

    /// Renders the text form parsed by [`parse_table`].
    ///
    /// [`parse_table`]: FiniteQuandle::parse_table
    pub fn format_table(&self) -> String {
        let mut out = format!("{}\n", self.size());
        for row in &self.table {
            let line: Vec<String> = row.iter().map(usize::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Whether all translations commute. Checked two independent ways, which
/// must agree: the triple identity `(x ▷ y) ▷ z = (x ▷ z) ▷ y` and
/// commutativity of the translation permutations.
pub fn is_tc(q: &FiniteQuandle) -> bool {
    let n = q.size();
    let by_triples = (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| q.op(q.op(x, y), z) == q.op(q.op(x, z), y)))
    });
    let perms: Vec<Vec<usize>> = (0..n).map(|y| q.translation(y)).collect();
    let by_perms = (0..n).all(|a| {
        (a + 1..n).all(|b| (0..n).all(|x| perms[a][perms[b][x]] == perms[b][perms[a][x]]))
    });
    assert_eq!(by_triples, by_perms, "translation-commutativity checks disagree");
    by_triples
}

/// The two-orbit quandle on `n + 1` elements used as a standard target:
/// element 0 forms one orbit; elements `1..=n` form the other, cyclically
/// shifted by translation by 0 and fixed by everything else.
///
/// In subgroup terms this is the rank-2 family `S_1 = Z^2`,
/// `S_2 = <e_2, n*e_1>`. The placement of the factor `n` matters and is
/// easy to get backwards: it must multiply the coordinate of the OTHER
/// orbit. With this choice, acting by the lone orbit-1 element adds
/// `e_1`, whose image generates `Z^2 / S_2`, so it walks the `n`-element
/// orbit in a single cycle, while acting by any orbit-2 element adds
/// `e_2 ∈ S_2` and does nothing. The transposed family
/// `S_2 = <e_1, n*e_2>` swaps those two behaviors, and its two-component
/// coloring counts come out as `1 + 2n`, plus `n^2` only when `n`
/// divides both linking numbers, which is NOT the closed form in
/// [`hn_predicted`]. The version here is the one that satisfies it; see
/// the derivation on [`hn_predicted`].
pub fn xn(n: usize) -> FiniteQuandle {
    assert!(n >= 1, "xn needs n >= 1");
    let size = n + 1;
    let mut table = vec![vec![0usize; size]; size];
    for x in 0..size {
        for y in 0..size {
            table[x][y] = if x == 0 {
                0
            } else if y == 0 {
                1 + (x % n)
            } else {
                x
            };
        }
    }
    let mut orbit_of = vec![1usize; size];
    orbit_of[0] = 0;
    FiniteQuandle::with_orbits(table, orbit_of)
}

/// Closed-form coloring count of a two-component diagram into [`xn`]:
/// `n^2 + 1`, plus `n` for each of the two linking numbers divisible by
/// `n`. `l12` counts component 1 passing over component 2 and `l21` the
/// reverse.
///
/// Derivation. A coloring is a choice of one target element per
/// component such that each is fixed by the abelianized word of its
/// overpasses (translations commute, so only signed counts matter).
/// Component `i`'s constraint is `beta_{x_j}^{l_ij}(x_i) = x_i` where
/// `l_ij` counts `j` passing over `i`. Four cases for [`xn`]:
/// both colors in the `n`-element orbit, where every translation is the
/// identity, giving `n^2`; both colors equal to the fixed element,
/// giving `1`; and the two mixed cases, where the color in the big orbit
/// must be fixed by an `n`-cycle raised to one of the linking numbers,
/// giving `n` exactly when `n` divides it.
pub fn hn_predicted(l12: i64, l21: i64, n: u64) -> u64 {
    let n = n as i64;
    let mut count = n * n + 1;
    if l12.rem_euclid(n) == 0 {
        count += n;
    }
    if l21.rem_euclid(n) == 0 {
        count += n;
    }
    count as u64
}

/// Counts colorings by enumerating every assignment of target elements
/// to arcs. Works for any valid quandle target. The number of candidate
/// assignments `|T|^arcs` is capped by `caps.max_colorings`.
pub fn count_homs_bruteforce(
    d: &LinkDiagram,
    target: &FiniteQuandle,
    caps: &Caps,
) -> Result<u64> {
    let t = d.arc_table();
    let arcs = t.total_arcs();
    let n = target.size();
    let mut space = 1u128;
    for _ in 0..arcs {
        space = space.saturating_mul(n as u128);
        if space > caps.max_colorings {
            return Err(Error::CapExceeded(format!(
                "{n}^{arcs} colorings (cap {})",
                caps.max_colorings
            )));
        }
    }
    if n == 0 {
        return Ok(0);
    }

    // Constraints indexed by the largest flat arc they mention, so each
    // is checked as soon as its arcs are all assigned.
    struct Constraint {
        under_in: usize,
        under_out: usize,
        over: usize,
        positive: bool,
    }
    let mut by_last: Vec<Vec<Constraint>> = (0..arcs).map(|_| Vec::new()).collect();
    for c in &t.crossings {
        let con = Constraint {
            under_in: t.flat(c.under_in),
            under_out: t.flat(c.under_out),
            over: t.flat(c.over_arc),
            positive: c.sign > 0,
        };
        let last = con.under_in.max(con.under_out).max(con.over);
        by_last[last].push(con);
    }

    let mut color = vec![0usize; arcs];
    let mut count = 0u64;
    let mut level = 0usize;
    // color[level] holds the next candidate to try at this level
    loop {
        if level == arcs {
            count += 1;
            // backtrack
            loop {
                if level == 0 {
                    return Ok(count);
                }
                level -= 1;
                color[level] += 1;
                if color[level] < n {
                    break;
                }
            }
            continue;
        }
        let ok = by_last[level].iter().all(|con| {
            if con.positive {
                color[con.under_out] == target.op(color[con.under_in], color[con.over])
            } else {
                color[con.under_in] == target.op(color[con.under_out], color[con.over])
            }
        });
        if ok {
            level += 1;
            if level < arcs {
                color[level] = 0;
            }
        } else {
            loop {
                color[level] += 1;
                if color[level] < n {
                    break;
                }
                if level == 0 {
                    return Ok(count);
                }
                level -= 1;
            }
        }
    }
}

/// Applies the translation power `β_y^e` to `x` by walking the cycle of
/// `x` under `β_y`; `e` may be any integer, `beta` any permutation
/// given as a lookup table.
pub fn translation_power(beta: &[usize], e: i64, x: usize) -> usize {
    // cycle of x
    let mut cycle = vec![x];
    let mut cur = beta[x];
    while cur != x {
        cycle.push(cur);
        cur = beta[cur];
    }
    let len = cycle.len() as i64;
    cycle[e.rem_euclid(len) as usize]
}

/// Counts colorings of a diagram into a translation-commutative target
/// by seeding one element per component and propagating it along the
/// component. Errors if the target is not translation-commutative.
pub fn count_homs_tc_propagate(d: &LinkDiagram, target: &FiniteQuandle) -> Result<u64> {
    if !is_tc(target) {
        return Err(Error::NotTranslationCommutative);
    }
    let t = d.arc_table();
    let n = target.size();
    if n == 0 {
        return Ok(0);
    }
    let mu = d.mu();
    let trans: Vec<Vec<usize>> = (0..n).map(|y| target.translation(y)).collect();
    let inv: Vec<Vec<usize>> = (0..n).map(|y| target.inverse_translation(y)).collect();

    let mut seed = vec![0usize; mu];
    let mut count = 0u64;
    loop {
        // A seed extends to exactly one coloring of each component if
        // the component closes up on itself: pushing the seed through
        // every under-crossing must return it unchanged.
        let closes = (0..mu).all(|i| {
            let mut x = seed[i];
            for step in &t.walks[i] {
                let y = seed[step.over_component];
                x = if step.sign > 0 { trans[y][x] } else { inv[y][x] };
            }
            x == seed[i]
        });
        if closes {
            count += 1;
        }
        // next seed tuple
        let mut i = mu;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            seed[i] += 1;
            if seed[i] < n {
                break;
            }
            seed[i] = 0;
        }
    }
}

/// Counts colorings of any diagram with linking matrix `m` into a
/// translation-commutative target, using only the matrix: a tuple
/// `(t_1, .., t_mu)` contributes exactly when each `t_i` is fixed by the
/// product over `j != i` of `β_{t_j}` raised to the linking number of
/// `j` over `i`. Errors if the target is not translation-commutative.
pub fn count_homs_tc_fixedpoint(m: &LinkingMatrix, target: &FiniteQuandle) -> Result<u64> {
    if !is_tc(target) {
        return Err(Error::NotTranslationCommutative);
    }
    let n = target.size();
    if n == 0 {
        return Ok(0);
    }
    let mu = m.mu();
    let trans: Vec<Vec<usize>> = (0..n).map(|y| target.translation(y)).collect();

    let mut tuple = vec![0usize; mu];
    let mut count = 0u64;
    loop {
        let fixed = (0..mu).all(|i| {
            let mut x = tuple[i];
            for j in 0..mu {
                if j != i {
                    let e = m.get(i, j);
                    if e != 0 {
                        x = translation_power(&trans[tuple[j]], e, x);
                    }
                }
            }
            x == tuple[i]
        });
        if fixed {
            count += 1;
        }
        let mut i = mu;
        loop {
            if i == 0 {
                return Ok(count);
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
}
