//! Translation-commutative quandles presented by subgroup families.
//!
//! A family is a list of subgroups `S_1, .., S_m` of `Z^m` with the
//! `b`-th unit vector contained in `S_b`. It presents a quandle on the
//! disjoint union of the quotients `A_b = Z^m / S_b`: acting on an
//! element of `A_b` by any element of `A_c` adds the image of the `c`-th
//! unit vector. Every such quandle is translation-commutative, and every
//! finite translation-commutative quandle arises this way.
//!
//! A diagram contributes the family with `S_b` generated by the `b`-th
//! unit vector together with row `b` of the linking matrix. Three
//! isomorphism decisions are provided, from general to specialized:
//!
//! * [`qs_isomorphic_general`] compares arbitrary families by searching
//!   for a coordinate permutation matching the subgroups,
//! * [`qs_isomorphic_pm`] compares one-row families: a permutation works
//!   exactly when it matches each row up to a per-row sign,
//! * [`tc_isomorphic_classical`] compares symmetric linking matrices,
//!   where the signs are constant on each connected component of the
//!   linking graph.
//!
//! [`canonical_form`] minimizes a linking matrix over simultaneous
//! reindexing and per-row sign flips; two matrices get equal canonical
//! forms exactly when [`qs_isomorphic_pm`] relates them.

use num_bigint::BigInt;
use num_traits::Zero;

use itertools::Itertools;
use serde::ser::{Error as _, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::coloring::FiniteQuandle;
use crate::error::{Error, Result};
use crate::lattice::{hnf, int_vec, unit_vec, IntVector, LatticeBasis, LatticeIndex};
use crate::linking::{connected_components, linking_graph, LinkingMatrix};

/// A family of subgroups `S_1, .., S_m <= Z^m` with `e_b` in `S_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFamily {
    m: usize,
    subgroups: Vec<LatticeBasis>,
}

impl SubgroupFamily {
    /// Builds a family, checking ambient ranks and the defining
    /// condition that each `S_b` contains the `b`-th unit vector.
    pub fn new(subgroups: Vec<LatticeBasis>) -> Result<SubgroupFamily> {
        let m = subgroups.len();
        for (b, s) in subgroups.iter().enumerate() {
            if s.ambient() != m {
                return Err(Error::Precondition(format!(
                    "subgroup {} lives in Z^{}, expected Z^{m}",
                    b + 1,
                    s.ambient()
                )));
            }
            if !s.contains(&unit_vec(m, b)) {
                return Err(Error::Precondition(format!(
                    "subgroup {} does not contain its unit vector",
                    b + 1
                )));
            }
        }
        Ok(SubgroupFamily { m, subgroups })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn subgroups(&self) -> &[LatticeBasis] {
        &self.subgroups
    }

    /// Index of each orbit `Z^m / S_b`.
    pub fn orbit_indexes(&self) -> Vec<LatticeIndex> {
        self.subgroups.iter().map(LatticeBasis::index).collect()
    }
}

impl Serialize for SubgroupFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut subgroups: Vec<Vec<Vec<i64>>> = Vec::with_capacity(self.m);
        for sub in &self.subgroups {
            let rows: std::result::Result<Vec<Vec<i64>>, _> = sub
                .rows()
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|x| i64::try_from(x).map_err(|_| S::Error::custom("entry exceeds i64")))
                        .collect()
                })
                .collect();
            subgroups.push(rows?);
        }
        let mut st = s.serialize_struct("SubgroupFamily", 2)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("subgroups", &subgroups)?;
        st.end()
    }
}

/// A family in one-row form: `S_b` is spanned by the `b`-th unit vector
/// and the stored row `s_b`. The `b`-th coordinate of `s_b` is
/// irrelevant modulo the unit vector and is stored as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkFamilyRows {
    rows: Vec<Vec<i64>>,
}

impl LinkFamilyRows {
    /// Wraps rows of a square matrix; the diagonal is zeroed.
    pub fn from_rows(mut rows: Vec<Vec<i64>>) -> LinkFamilyRows {
        let m = rows.len();
        for (i, row) in rows.iter_mut().enumerate() {
            assert_eq!(row.len(), m, "rows must form a square matrix");
            row[i] = 0;
        }
        LinkFamilyRows { rows }
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

/// Witness for an isomorphism decision. `perm[b]` is the 0-based index
/// the `b+1`-st component maps to; when signs participate, `signs[b]`
/// relates source row `b` to target row `perm[b]`:
/// `rows[b][j] == signs[b] * rows'[perm[b]][perm[j]]`.
///
/// Serializes with 1-based `perm` entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCertificate {
    pub perm: Vec<usize>,
    pub signs: Option<Vec<i8>>,
}

impl Serialize for IsoCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let perm1: Vec<usize> = self.perm.iter().map(|&p| p + 1).collect();
        let mut st = s.serialize_struct("IsoCertificate", 2)?;
        st.serialize_field("perm", &perm1)?;
        st.serialize_field("signs", &self.signs)?;
        st.end()
    }
}

/// The subgroup family of a linking matrix: `S_b` is generated by the
/// `b`-th unit vector and row `b`. Also returns the rows in one-row
/// form for the specialized decisions.
pub fn family_from_linking(m: &LinkingMatrix) -> (SubgroupFamily, LinkFamilyRows) {
    let mu = m.mu();
    let subgroups = (0..mu)
        .map(|b| hnf(mu, &[unit_vec(mu, b), int_vec(&m.rows()[b])]))
        .collect();
    let family = SubgroupFamily::new(subgroups).expect("unit vector is a generator");
    (family, LinkFamilyRows::from_rows(m.rows().to_vec()))
}

fn check_mu_cap(m: usize, caps: &Caps) -> Result<()> {
    if m > caps.max_mu {
        Err(Error::CapExceeded(format!(
            "isomorphism search over {m} components (cap {})",
            caps.max_mu
        )))
    } else {
        Ok(())
    }
}

/// Decides whether two families present isomorphic quandles, searching
/// for a coordinate permutation carrying each `S_b` onto `S'_{f(b)}`.
/// Returns the lexicographically least witness, or `None`. Families of
/// unequal size are never isomorphic; the search is capped by
/// `caps.max_mu`.
pub fn qs_isomorphic_general(
    a: &SubgroupFamily,
    b: &SubgroupFamily,
    caps: &Caps,
) -> Result<Option<IsoCertificate>> {
    if a.m() != b.m() {
        return Ok(None);
    }
    check_mu_cap(a.m(), caps)?;
    let m = a.m();
    let idx_a: Vec<LatticeIndex> = a.orbit_indexes();
    let idx_b: Vec<LatticeIndex> = b.orbit_indexes();
    // Membership fingerprints: which unit vectors lie in which subgroup.
    let unit_in = |f: &SubgroupFamily| -> Vec<Vec<bool>> {
        (0..m)
            .map(|s| (0..m).map(|c| f.subgroups()[s].contains(&unit_vec(m, c))).collect())
            .collect()
    };
    let in_a = unit_in(a);
    let in_b = unit_in(b);

    struct Search<'s> {
        m: usize,
        a: &'s SubgroupFamily,
        b: &'s SubgroupFamily,
        idx_a: Vec<LatticeIndex>,
        idx_b: Vec<LatticeIndex>,
        in_a: Vec<Vec<bool>>,
        in_b: Vec<Vec<bool>>,
        f: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn dfs(&mut self, level: usize) -> bool {
            if level == self.m {
                // The fingerprints prune but do not decide; accept only
                // permutations that carry every subgroup exactly.
                return (0..self.m).all(|s| {
                    self.a.subgroups()[s].permute_coordinates(&self.f)
                        == self.b.subgroups()[self.f[s]]
                });
            }
            for cand in 0..self.m {
                if self.used[cand]
                    || self.idx_a[level] != self.idx_b[cand]
                    || self.in_a[level][level] != self.in_b[cand][cand]
                {
                    continue;
                }
                let consistent = (0..level).all(|c| {
                    self.in_a[level][c] == self.in_b[cand][self.f[c]]
                        && self.in_a[c][level] == self.in_b[self.f[c]][cand]
                });
                if !consistent {
                    continue;
                }
                self.f[level] = cand;
                self.used[cand] = true;
                if self.dfs(level + 1) {
                    return true;
                }
                self.used[cand] = false;
                self.f[level] = usize::MAX;
            }
            false
        }
    }

    let mut search = Search {
        m,
        a,
        b,
        idx_a,
        idx_b,
        in_a,
        in_b,
        f: vec![usize::MAX; m],
        used: vec![false; m],
    };
    if search.dfs(0) {
        Ok(Some(IsoCertificate { perm: search.f, signs: None }))
    } else {
        Ok(None)
    }
}

/// Checks a one-row-form witness: `rows[b][j] == signs[b] *
/// rows'[perm[b]][perm[j]]` for all `b, j`, ignoring diagonals.
pub fn pm_certificate_holds(a: &LinkFamilyRows, b: &LinkFamilyRows, cert: &IsoCertificate) -> bool {
    let m = a.m();
    if b.m() != m || cert.perm.len() != m {
        return false;
    }
    let Some(signs) = &cert.signs else { return false };
    let mut seen = vec![false; m];
    for &p in &cert.perm {
        if p >= m || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    (0..m).all(|i| {
        (0..m).all(|j| {
            i == j
                || a.rows()[i][j] == i64::from(signs[i]) * b.rows()[cert.perm[i]][cert.perm[j]]
        })
    })
}

/// Decides whether two one-row families present isomorphic quandles:
/// some permutation `f` and per-row signs match the rows entrywise.
/// Returns the lexicographically least witness (`f` first, then signs
/// with `+1` preferred), or `None`. Capped by `caps.max_mu`.
pub fn qs_isomorphic_pm(
    a: &LinkFamilyRows,
    b: &LinkFamilyRows,
    caps: &Caps,
) -> Result<Option<IsoCertificate>> {
    if a.m() != b.m() {
        return Ok(None);
    }
    check_mu_cap(a.m(), caps)?;
    let m = a.m();

    // A row can only map to a row with the same multiset of absolute
    // values, and likewise for columns.
    let abs_profile = |rows: &[Vec<i64>], transpose: bool| -> Vec<Vec<i64>> {
        (0..m)
            .map(|i| {
                let mut p: Vec<i64> = (0..m)
                    .filter(|&j| j != i)
                    .map(|j| if transpose { rows[j][i].abs() } else { rows[i][j].abs() })
                    .collect();
                p.sort_unstable();
                p
            })
            .collect()
    };
    let row_a = abs_profile(a.rows(), false);
    let row_b = abs_profile(b.rows(), false);
    let col_a = abs_profile(a.rows(), true);
    let col_b = abs_profile(b.rows(), true);

    struct Search<'s> {
        m: usize,
        a: &'s [Vec<i64>],
        b: &'s [Vec<i64>],
        f: Vec<usize>,
        used: Vec<bool>,
        sign: Vec<i8>, // 0 = undetermined
    }
    impl Search<'_> {
        /// Reconciles `value == sign[row] * target`; returns false on
        /// conflict, recording the sign when it becomes determined.
        fn bind(&mut self, row: usize, value: i64, target: i64) -> bool {
            if target == 0 {
                return value == 0;
            }
            if value.abs() != target.abs() {
                return false;
            }
            let s = if value == target { 1 } else { -1 };
            match self.sign[row] {
                0 => {
                    self.sign[row] = s;
                    true
                }
                cur => cur == s,
            }
        }

        fn dfs(&mut self, level: usize, row_a: &[Vec<i64>], row_b: &[Vec<i64>], col_a: &[Vec<i64>], col_b: &[Vec<i64>]) -> bool {
            if level == self.m {
                return true;
            }
            let saved_signs = self.sign.clone();
            for cand in 0..self.m {
                if self.used[cand] || row_a[level] != row_b[cand] || col_a[level] != col_b[cand] {
                    continue;
                }
                self.f[level] = cand;
                self.used[cand] = true;
                let mut ok = true;
                for c in 0..=level {
                    if !self.bind(level, self.a[level][c], self.b[cand][self.f[c]])
                        || !self.bind(c, self.a[c][level], self.b[self.f[c]][cand])
                    {
                        ok = false;
                        break;
                    }
                }
                if ok && self.dfs(level + 1, row_a, row_b, col_a, col_b) {
                    return true;
                }
                self.used[cand] = false;
                self.f[level] = usize::MAX;
                self.sign.copy_from_slice(&saved_signs);
            }
            false
        }
    }

    let mut search = Search {
        m,
        a: a.rows(),
        b: b.rows(),
        f: vec![usize::MAX; m],
        used: vec![false; m],
        sign: vec![0; m],
    };
    if !search.dfs(0, &row_a, &row_b, &col_a, &col_b) {
        return Ok(None);
    }
    let signs: Vec<i8> = search.sign.iter().map(|&s| if s == 0 { 1 } else { s }).collect();
    let cert = IsoCertificate { perm: search.f, signs: Some(signs) };
    debug_assert!(pm_certificate_holds(a, b, &cert));
    Ok(Some(cert))
}

/// Decides isomorphism for classical links from symmetric linking
/// matrices: a permutation plus a sign for each connected component of
/// the linking graph. Both matrices must be symmetric (error when not).
/// The certificate's `signs` hold the per-component sign expanded to
/// every source row. Capped by `caps.max_mu`.
pub fn tc_isomorphic_classical(
    a: &LinkingMatrix,
    b: &LinkingMatrix,
    caps: &Caps,
) -> Result<Option<IsoCertificate>> {
    for (name, m) in [("first", a), ("second", b)] {
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
    }
    if a.mu() != b.mu() {
        return Ok(None);
    }
    check_mu_cap(a.mu(), caps)?;
    let m = a.mu();

    // One sign per connected component of the source linking graph.
    let classes = connected_components(&linking_graph(a));
    let mut comp_of = vec![0usize; m];
    for (id, class) in classes.iter().enumerate() {
        for &v in class {
            comp_of[v - 1] = id;
        }
    }

    struct Search<'s> {
        m: usize,
        a: &'s LinkingMatrix,
        b: &'s LinkingMatrix,
        comp_of: Vec<usize>,
        f: Vec<usize>,
        used: Vec<bool>,
        sign: Vec<i8>, // per component id, 0 = undetermined
    }
    impl Search<'_> {
        fn bind(&mut self, row: usize, value: i64, target: i64) -> bool {
            if target == 0 {
                return value == 0;
            }
            if value.abs() != target.abs() {
                return false;
            }
            let s = if value == target { 1 } else { -1 };
            let comp = self.comp_of[row];
            match self.sign[comp] {
                0 => {
                    self.sign[comp] = s;
                    true
                }
                cur => cur == s,
            }
        }

        fn dfs(&mut self, level: usize) -> bool {
            if level == self.m {
                return true;
            }
            let saved = self.sign.clone();
            for cand in 0..self.m {
                if self.used[cand] {
                    continue;
                }
                self.f[level] = cand;
                self.used[cand] = true;
                let mut ok = true;
                for c in 0..=level {
                    if !self.bind(level, self.a.get(level, c), self.b.get(cand, self.f[c]))
                        || !self.bind(c, self.a.get(c, level), self.b.get(self.f[c], cand))
                    {
                        ok = false;
                        break;
                    }
                }
                if ok && self.dfs(level + 1) {
                    return true;
                }
                self.used[cand] = false;
                self.f[level] = usize::MAX;
                self.sign.copy_from_slice(&saved);
            }
            false
        }
    }

    let mut search = Search {
        m,
        a,
        b,
        comp_of: comp_of.clone(),
        f: vec![usize::MAX; m],
        used: vec![false; m],
        sign: vec![0; classes.len()],
    };
    if !search.dfs(0) {
        return Ok(None);
    }
    let signs: Vec<i8> = (0..m)
        .map(|i| match search.sign[comp_of[i]] {
            0 => 1,
            s => s,
        })
        .collect();
    Ok(Some(IsoCertificate { perm: search.f, signs: Some(signs) }))
}

/// The minimum of `eps_i * m[perm(i)][perm(j)]` over all reindexings and
/// per-row signs, compared as flattened row-major integer sequences.
/// Two matrices have equal canonical forms exactly when
/// [`qs_isomorphic_pm`] finds a witness between them. Enumerates all
/// `mu!` permutations, capped by `caps.max_canon_mu`.
pub fn canonical_form(m: &LinkingMatrix, caps: &Caps) -> Result<LinkingMatrix> {
    let mu = m.mu();
    if mu > caps.max_canon_mu {
        return Err(Error::CapExceeded(format!(
            "canonical form over {mu} components (cap {})",
            caps.max_canon_mu
        )));
    }
    let mut best: Option<Vec<Vec<i64>>> = None;
    for perm in (0..mu).permutations(mu) {
        let mut cand: Vec<Vec<i64>> = Vec::with_capacity(mu);
        for i in 0..mu {
            let row: Vec<i64> = (0..mu).map(|j| m.get(perm[i], perm[j])).collect();
            let flipped: Vec<i64> = row.iter().map(|&x| -x).collect();
            // Row signs act independently, so each row is minimized on
            // its own.
            cand.push(if flipped < row { flipped } else { row });
        }
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    Ok(LinkingMatrix::from_rows(best.expect("at least the identity permutation")))
}

/// Builds the finite quandle presented by a family, provided every orbit
/// is finite. Elements are numbered orbit by orbit, each orbit listing
/// its canonical coset representatives in lexicographic order.
pub fn materialize(family: &SubgroupFamily) -> Result<FiniteQuandle> {
    let m = family.m();
    for (b, s) in family.subgroups().iter().enumerate() {
        if s.index() == LatticeIndex::Infinite {
            return Err(Error::InfiniteOrbit { orbit: b + 1 });
        }
    }
    let mut reps: Vec<Vec<IntVector>> = Vec::with_capacity(m);
    for s in family.subgroups() {
        reps.push(s.coset_reps().ok_or_else(|| {
            Error::CapExceeded("orbit too large to materialize".into())
        })?);
    }
    let mut offset = vec![0usize; m];
    let mut total = 0usize;
    for b in 0..m {
        offset[b] = total;
        total += reps[b].len();
    }
    let mut orbit_of = vec![0usize; total];
    for b in 0..m {
        for x in offset[b]..offset[b] + reps[b].len() {
            orbit_of[x] = b;
        }
    }
    // Acting by any element of orbit c adds e_c, reduced in the actor's
    // own orbit.
    let mut table = vec![vec![0usize; total]; total];
    for b in 0..m {
        let sub = &family.subgroups()[b];
        for (i, rep) in reps[b].iter().enumerate() {
            let x = offset[b] + i;
            for c in 0..m {
                let mut moved = rep.clone();
                moved[c] += 1;
                let reduced = sub.reduce(&moved);
                let image = offset[b] + sub.rep_rank(&reduced);
                for y in offset[c]..offset[c] + reps[c].len() {
                    table[x][y] = image;
                }
            }
        }
    }
    Ok(FiniteQuandle::with_orbits(table, orbit_of))
}

/// Recovers a presenting family from a finite translation-commutative
/// quandle: one subgroup per orbit, built from the closure relations of
/// a breadth-first traversal of the orbit under the orbit translations.
/// Up to isomorphism this inverts [`materialize`]. The table must be a
/// quandle (checked) and translation-commutative (checked).
pub fn extract_structure(q: &FiniteQuandle) -> Result<SubgroupFamily> {
    if let Err(v) = q.check_axioms() {
        return Err(Error::BadTable(v.to_string()));
    }
    if !crate::coloring::is_tc(q) {
        return Err(Error::NotTranslationCommutative);
    }
    let n = q.size();

    // Orbits: connected components under all translations.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for x in 0..n {
        for y in 0..n {
            let a = find(&mut parent, x);
            let b = find(&mut parent, q.op(x, y));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut root_order: Vec<usize> = Vec::new();
    let mut orbit_of = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        let id = match root_order.iter().position(|&q| q == r) {
            Some(id) => id,
            None => {
                root_order.push(r);
                root_order.len() - 1
            }
        };
        orbit_of[x] = id;
    }
    let m = root_order.len();
    // Base point of each orbit: its least element (orbits are listed by
    // least element because ids were assigned in scan order).
    let mut base = vec![usize::MAX; m];
    for x in 0..n {
        if base[orbit_of[x]] == usize::MAX {
            base[orbit_of[x]] = x;
        }
    }
    let trans: Vec<Vec<usize>> = base.iter().map(|&b| q.translation(b)).collect();

    let mut subgroups = Vec::with_capacity(m);
    for b in 0..m {
        // Breadth-first search from the base point. Tree edges assign a
        // potential vector to each element; every non-tree edge closes a
        // cycle and contributes the relation tying the two potentials.
        let mut potential: Vec<Option<IntVector>> = vec![None; n];
        potential[base[b]] = Some(vec![BigInt::zero(); m]);
        let mut queue = std::collections::VecDeque::from([base[b]]);
        let mut relations: Vec<IntVector> = Vec::new();
        while let Some(x) = queue.pop_front() {
            for c in 0..m {
                let y = trans[c][x];
                let mut v = potential[x].clone().expect("queued elements have potentials");
                v[c] += 1;
                match &potential[y] {
                    None => {
                        potential[y] = Some(v);
                        queue.push_back(y);
                    }
                    Some(w) => {
                        for j in 0..m {
                            v[j] -= &w[j];
                        }
                        if !v.iter().all(Zero::is_zero) {
                            relations.push(v);
                        }
                    }
                }
            }
        }
        subgroups.push(hnf(m, &relations));
    }
    SubgroupFamily::new(subgroups)
}
