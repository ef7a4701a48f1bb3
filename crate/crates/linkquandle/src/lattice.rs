//! Exact arithmetic on subgroups of `Z^m`.
//!
//! A subgroup (integer lattice, not necessarily full rank) is stored as a
//! basis in row-style Hermite normal form: rows in echelon order, every
//! pivot positive, and every entry above a pivot reduced into
//! `[0, pivot)`. The HNF basis of a subgroup is unique, so two subgroups
//! are equal exactly when their `LatticeBasis` values are equal.
//!
//! All entries are arbitrary-precision: the elimination that computes the
//! HNF can blow up intermediate entries far past machine range even when
//! the inputs are small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A vector in `Z^m`.
pub type IntVector = Vec<BigInt>;

/// Convenience constructor for an [`IntVector`] from machine integers.
pub fn int_vec(entries: &[i64]) -> IntVector {
    entries.iter().map(|&e| BigInt::from(e)).collect()
}

/// The `i`-th standard basis vector of `Z^m` (0-based).
pub fn unit_vec(m: usize, i: usize) -> IntVector {
    assert!(i < m, "unit vector index {i} out of range for Z^{m}");
    let mut v = vec![BigInt::zero(); m];
    v[i] = BigInt::one();
    v
}

/// The index of a subgroup in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

/// A subgroup of `Z^m` held in Hermite normal form.
///
/// Zero rows are dropped, so `rows().len()` is the rank. The trivial
/// subgroup has no rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeBasis {
    m: usize,
    rows: Vec<IntVector>,
}

/// Hermite normal form of the subgroup of `Z^m` generated by `generators`.
///
/// Accepts any number of generators of any rank, including none.
pub fn hnf(m: usize, generators: &[IntVector]) -> LatticeBasis {
    for g in generators {
        assert_eq!(g.len(), m, "generator length {} != ambient rank {m}", g.len());
    }
    let mut rows: Vec<IntVector> = generators.to_vec();
    let mut top = 0usize;
    for col in 0..m {
        loop {
            // Pick the row with the smallest nonzero entry in this column
            // as the working pivot; Euclidean steps shrink the rest.
            let mut pivot: Option<usize> = None;
            for r in top..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                pivot = match pivot {
                    Some(p) if rows[p][col].abs() <= rows[r][col].abs() => Some(p),
                    _ => Some(r),
                };
            }
            let Some(p) = pivot else { break };
            rows.swap(top, p);
            if rows[top][col].is_negative() {
                for x in rows[top].iter_mut() {
                    *x = -&*x;
                }
            }
            let mut settled = true;
            for r in top + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[top][col]);
                row_sub(&mut rows, r, top, &q, col);
                if !rows[r][col].is_zero() {
                    settled = false;
                }
            }
            if settled {
                for r in 0..top {
                    let q = rows[r][col].div_floor(&rows[top][col]);
                    if !q.is_zero() {
                        row_sub(&mut rows, r, top, &q, col);
                    }
                }
                top += 1;
                break;
            }
        }
    }
    rows.truncate(top);
    LatticeBasis { m, rows }
}

/// `rows[r] -= q * rows[src]`, touching only columns `>= col` (all
/// earlier columns of `rows[src]` are zero by the echelon invariant).
fn row_sub(rows: &mut [IntVector], r: usize, src: usize, q: &BigInt, col: usize) {
    let m = rows[src].len();
    for j in col..m {
        let d = &rows[src][j] * q;
        rows[r][j] -= d;
    }
}

/// Whether two subgroups of the same `Z^m` are equal.
///
/// Both arguments are already canonical, so this is row equality.
pub fn lattice_equal(a: &LatticeBasis, b: &LatticeBasis) -> bool {
    a == b
}

impl LatticeBasis {
    /// The full subgroup `Z^m`.
    pub fn full(m: usize) -> LatticeBasis {
        let rows = (0..m).map(|i| unit_vec(m, i)).collect();
        LatticeBasis { m, rows }
    }

    /// Ambient rank `m`.
    pub fn ambient(&self) -> usize {
        self.m
    }

    /// Basis rows in HNF order.
    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    /// Rank of the subgroup.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_col(&self, r: usize) -> usize {
        self.rows[r]
            .iter()
            .position(|x| !x.is_zero())
            .expect("HNF rows are nonzero")
    }

    /// Membership test by back-substitution along the echelon rows.
    pub fn contains(&self, v: &IntVector) -> bool {
        assert_eq!(v.len(), self.m, "vector length {} != ambient rank {}", v.len(), self.m);
        let mut w = v.clone();
        for r in 0..self.rows.len() {
            let col = self.pivot_col(r);
            if w[col].is_zero() {
                continue;
            }
            let (q, rem) = w[col].div_rem(&self.rows[r][col]);
            if !rem.is_zero() {
                return false;
            }
            for j in col..self.m {
                let d = &self.rows[r][j] * &q;
                w[j] -= d;
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Canonical representative of the coset `v + L`.
    ///
    /// Reduces `v` by floor division against each pivot in echelon order;
    /// for a full-rank basis the result is the unique coset member with
    /// every coordinate in `[0, pivot)`.
    pub fn reduce(&self, v: &IntVector) -> IntVector {
        assert_eq!(v.len(), self.m);
        let mut w = v.clone();
        for r in 0..self.rows.len() {
            let col = self.pivot_col(r);
            let q = w[col].div_floor(&self.rows[r][col]);
            if q.is_zero() {
                continue;
            }
            for j in col..self.m {
                let d = &self.rows[r][j] * &q;
                w[j] -= d;
            }
        }
        w
    }

    /// Index of the subgroup in `Z^m`: the product of the pivots when the
    /// rank is full, infinite otherwise.
    pub fn index(&self) -> LatticeIndex {
        if self.rows.len() < self.m {
            return LatticeIndex::Infinite;
        }
        let mut idx = BigInt::one();
        for r in 0..self.m {
            idx *= &self.rows[r][r];
        }
        LatticeIndex::Finite(idx)
    }

    /// Pivot entries of a full-rank basis (the diagonal), or `None` if
    /// the subgroup has infinite index.
    pub fn diagonal(&self) -> Option<Vec<BigInt>> {
        if self.rows.len() < self.m {
            return None;
        }
        Some((0..self.m).map(|r| self.rows[r][r].clone()).collect())
    }

    /// The canonical coset representatives of `Z^m / L`, in
    /// lexicographic order, or `None` if the index is infinite.
    ///
    /// For a full-rank HNF basis the representatives are exactly the
    /// vectors with `0 <= v[r] < pivot_r`, enumerated with the last
    /// coordinate varying fastest.
    pub fn coset_reps(&self) -> Option<Vec<IntVector>> {
        let diag = self.diagonal()?;
        let mut reps = vec![vec![BigInt::zero(); self.m]];
        // Guard against absurd sizes before materializing.
        let mut total = BigInt::one();
        for d in &diag {
            total *= d;
        }
        let total: usize = total.try_into().ok()?;
        reps.reserve(total.saturating_sub(1));
        let mut cur = vec![BigInt::zero(); self.m];
        for _ in 1..total {
            let mut r = self.m;
            loop {
                r -= 1;
                cur[r] += 1;
                if cur[r] < diag[r] {
                    break;
                }
                cur[r] = BigInt::zero();
            }
            reps.push(cur.clone());
        }
        Some(reps)
    }

    /// Position of a canonical representative in [`coset_reps`] order.
    ///
    /// `v` must already be reduced. Panics if the index is infinite.
    ///
    /// [`coset_reps`]: LatticeBasis::coset_reps
    pub fn rep_rank(&self, v: &IntVector) -> usize {
        let diag = self.diagonal().expect("rep_rank needs finite index");
        let mut rank = 0usize;
        for r in 0..self.m {
            let d: usize = (&diag[r]).try_into().expect("pivot fits usize");
            let x: usize = (&v[r]).try_into().expect("reduced coordinate fits usize");
            rank = rank * d + x;
        }
        rank
    }

    /// The subgroup obtained by relabeling coordinates: coordinate `j`
    /// of each row moves to coordinate `perm[j]`. Returns the HNF of the
    /// image.
    pub fn permute_coordinates(&self, perm: &[usize]) -> LatticeBasis {
        assert_eq!(perm.len(), self.m, "permutation length mismatch");
        let gens: Vec<IntVector> = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![BigInt::zero(); self.m];
                for j in 0..self.m {
                    out[perm[j]] = row[j].clone();
                }
                out
            })
            .collect();
        hnf(self.m, &gens)
    }
}
