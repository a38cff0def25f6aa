//! Sparse arbitrary-precision integer matrices, Smith normal form, and
//! the exact linear solvers (over ℤ, ℚ and ℚ/ℤ) backing every
//! coboundary query in the crate.
//!
//! The SNF pivot rule is fixed for reproducibility: always take the
//! nonzero entry of smallest absolute value in the active submatrix,
//! ties broken by lowest (row, col).

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{canonical_lift_rat, CircleValue, Int, Rat};

/// Sparse integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, Int>>,
}

impl IntMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].insert(i, Int::one());
        }
        m
    }

    pub fn from_rows(nrows: usize, ncols: usize, entries: &[Vec<i64>]) -> Self {
        assert_eq!(entries.len(), nrows);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in entries.iter().enumerate() {
            assert_eq!(row.len(), ncols);
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.rows[i].insert(j, Int::from(v));
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.rows[i].get(&j).cloned().unwrap_or_else(Int::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        assert!(i < self.nrows && j < self.ncols);
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Int) {
        if v.is_zero() {
            return;
        }
        let entry = self.rows[i].entry(j).or_insert_with(Int::zero);
        *entry += v;
        if entry.is_zero() {
            self.rows[i].remove(&j);
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Int> {
        &self.rows[i]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (&j, v) in row {
                t.rows[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Int::zero();
                for (&j, v) in row {
                    acc += v * &x[j];
                }
                acc
            })
            .collect()
    }

    pub fn mul_vec_rat(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                let mut acc = Rat::zero();
                for (&j, v) in row {
                    acc += Rat::from(v.clone()) * &x[j];
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = IntMatrix::zeros(self.nrows, rhs.ncols);
        for i in 0..self.nrows {
            for (&k, a) in &self.rows[i] {
                for (&j, b) in &rhs.rows[k] {
                    out.add_to(i, j, &(a * b));
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    /// Vertically stacks `self` over `other` (column counts must match).
    pub fn stack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut out = self.clone();
        out.nrows += other.nrows;
        out.rows.extend(other.rows.iter().cloned());
        out
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.nrows, self.ncols)?;
        for i in 0..self.nrows.min(16) {
            let vals: Vec<String> = (0..self.ncols.min(16))
                .map(|j| self.get(i, j).to_string())
                .collect();
            writeln!(f, "  [{}]", vals.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Working state for the SNF elimination: the target matrix plus the
/// accumulated unimodular transforms and a column→rows occupancy index.
struct SnfWork {
    a: IntMatrix,
    cols: Vec<BTreeSet<usize>>,
    // None when transforms are not requested (rank/torsion-only runs).
    trans: Option<Transforms>,
    // Right-hand side carried through the row operations (one-shot
    // solves track this and v_t instead of the full transforms).
    rhs: Option<Vec<Int>>,
    v_only: Option<IntMatrix>,
}

// u_inv and v are maintained by column operations, so they are stored
// transposed: every transform update is then a row operation on sparse
// rows instead of a scan over all rows.
struct Transforms {
    u: IntMatrix,
    u_inv_t: IntMatrix,
    v_t: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWork {
    fn new(a: &IntMatrix, with_transforms: bool) -> Self {
        let mut cols = vec![BTreeSet::new(); a.ncols];
        for (i, row) in a.rows.iter().enumerate() {
            for &j in row.keys() {
                cols[j].insert(i);
            }
        }
        let trans = with_transforms.then(|| Transforms {
            u: IntMatrix::identity(a.nrows),
            u_inv_t: IntMatrix::identity(a.nrows),
            v_t: IntMatrix::identity(a.ncols),
            v_inv: IntMatrix::identity(a.ncols),
        });
        SnfWork {
            a: a.clone(),
            cols,
            trans,
            rhs: None,
            v_only: None,
        }
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        if r == s {
            return;
        }
        for j in self.a.rows[r].keys() {
            self.cols[*j].remove(&r);
        }
        for j in self.a.rows[s].keys() {
            self.cols[*j].remove(&s);
        }
        self.a.rows.swap(r, s);
        for j in self.a.rows[r].keys() {
            self.cols[*j].insert(r);
        }
        for j in self.a.rows[s].keys() {
            self.cols[*j].insert(s);
        }
        if let Some(t) = &mut self.trans {
            t.u.rows.swap(r, s);
            t.u_inv_t.rows.swap(r, s);
        }
        if let Some(rhs) = &mut self.rhs {
            rhs.swap(r, s);
        }
    }

    fn swap_cols(&mut self, c: usize, d: usize) {
        if c == d {
            return;
        }
        let rows: BTreeSet<usize> = self.cols[c].union(&self.cols[d]).cloned().collect();
        for &i in &rows {
            let vc = self.a.rows[i].remove(&c);
            let vd = self.a.rows[i].remove(&d);
            if let Some(v) = vc {
                self.a.rows[i].insert(d, v);
            }
            if let Some(v) = vd {
                self.a.rows[i].insert(c, v);
            }
        }
        self.cols.swap(c, d);
        if let Some(t) = &mut self.trans {
            t.v_t.rows.swap(c, d);
            t.v_inv.rows.swap(c, d);
        }
        if let Some(v_t) = &mut self.v_only {
            v_t.rows.swap(c, d);
        }
    }

    /// row_r ← row_r − q·row_t
    fn row_op(&mut self, r: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let updates: Vec<(usize, Int)> =
            self.a.rows[t].iter().map(|(&j, v)| (j, -(q * v))).collect();
        for (j, delta) in updates {
            let entry = self.a.rows[r].entry(j).or_insert_with(Int::zero);
            *entry += delta;
            if entry.is_zero() {
                self.a.rows[r].remove(&j);
                self.cols[j].remove(&r);
            } else {
                self.cols[j].insert(r);
            }
        }
        if let Some(tr) = &mut self.trans {
            row_op_raw(&mut tr.u, r, t, q);
            // U⁻¹ ← U⁻¹·E⁻¹, i.e. col_t += q·col_r: a row op on the transpose
            row_op_raw(&mut tr.u_inv_t, t, r, &-q.clone());
        }
        if let Some(rhs) = &mut self.rhs {
            let delta = q * &rhs[t];
            rhs[r] -= delta;
        }
    }

    /// col_c ← col_c − q·col_t
    fn col_op(&mut self, c: usize, t: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        let rows: Vec<usize> = self.cols[t].iter().cloned().collect();
        for i in rows {
            let vt = self.a.rows[i].get(&t).cloned().unwrap_or_else(Int::zero);
            let delta = -(q * &vt);
            let entry = self.a.rows[i].entry(c).or_insert_with(Int::zero);
            *entry += delta;
            if entry.is_zero() {
                self.a.rows[i].remove(&c);
                self.cols[c].remove(&i);
            } else {
                self.cols[c].insert(i);
            }
        }
        if let Some(tr) = &mut self.trans {
            // V ← V·F, i.e. col_c −= q·col_t: a row op on the transpose
            row_op_raw(&mut tr.v_t, c, t, q);
            // V⁻¹ ← F⁻¹·V⁻¹: row_t += q·row_c
            row_op_raw(&mut tr.v_inv, t, c, &-q.clone());
        }
        if let Some(v_t) = &mut self.v_only {
            row_op_raw(v_t, c, t, q);
        }
    }

    /// row_r ← −row_r
    fn negate_row(&mut self, r: usize) {
        for v in self.a.rows[r].values_mut() {
            *v = -v.clone();
        }
        if let Some(t) = &mut self.trans {
            for v in t.u.rows[r].values_mut() {
                *v = -v.clone();
            }
            for v in t.u_inv_t.rows[r].values_mut() {
                *v = -v.clone();
            }
        }
        if let Some(rhs) = &mut self.rhs {
            rhs[r] = -rhs[r].clone();
        }
    }

    /// Pivot scan over the active submatrix (rows ≥ t, cols ≥ t):
    /// smallest |entry|, ties at lowest (row, col).
    ///
    /// Scanning rows then columns in increasing order means the first
    /// entry of absolute value 1 cannot be beaten, so the scan stops there.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(Int, usize, usize)> = None;
        'rows: for i in t..self.a.nrows {
            for (&j, v) in self.a.rows[i].range(t..) {
                let a = v.abs();
                if a.is_one() {
                    best = Some((a, i, j));
                    break 'rows;
                }
                match &best {
                    Some((b, _, _)) if *b <= a => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }
}

fn row_op_raw(m: &mut IntMatrix, r: usize, t: usize, q: &Int) {
    let updates: Vec<(usize, Int)> = m.rows[t].iter().map(|(&j, v)| (j, -(q * v))).collect();
    for (j, delta) in updates {
        m.add_to(r, j, &delta);
    }
}

/// Smith normal form `U·A·V = S` with unimodular `U`, `V` (their inverses
/// are carried along, which certifies unimodularity), `S` diagonal with
/// `dᵢ ≥ 0` and `dᵢ | dᵢ₊₁`.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    nrows: usize,
    ncols: usize,
    diag: Vec<Int>,
    rank: usize,
    trans: Option<SnfTransforms>,
}

#[derive(Clone, Debug)]
pub struct SnfTransforms {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfDecomposition {
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Diagonal of S, length `min(nrows, ncols)`.
    pub fn diag(&self) -> &[Int] {
        &self.diag
    }

    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> &[Int] {
        &self.diag[..self.rank]
    }

    /// Invariant factors greater than one (the torsion divisors).
    pub fn torsion(&self) -> Vec<Int> {
        self.diag[..self.rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn transforms(&self) -> &SnfTransforms {
        self.trans
            .as_ref()
            .expect("SNF computed without transforms; use Snf::compute")
    }

    pub fn s_matrix(&self) -> IntMatrix {
        let mut s = IntMatrix::zeros(self.nrows, self.ncols);
        for (i, d) in self.diag.iter().enumerate() {
            if !d.is_zero() {
                s.set(i, i, d.clone());
            }
        }
        s
    }

    /// Checks `U·A·V = S`, `U·U⁻¹ = I`, `V·V⁻¹ = I` and the divisibility
    /// chain against the original matrix.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        let t = self.transforms();
        if t.u.matmul(a).matmul(&t.v) != self.s_matrix() {
            return false;
        }
        if t.u.matmul(&t.u_inv) != IntMatrix::identity(self.nrows) {
            return false;
        }
        if t.v.matmul(&t.v_inv) != IntMatrix::identity(self.ncols) {
            return false;
        }
        for w in self.diag.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() && !(&w[1] % &w[0]).is_zero() {
                return false;
            }
            if w[0].is_zero() && !w[1].is_zero() {
                return false;
            }
        }
        self.diag.iter().all(|d| !d.is_negative())
    }

    /// Integer solution of `A·x = b`, or `None` with the divisibility
    /// certificate failing (some `dᵢ ∤ (U·b)ᵢ` or a tail entry nonzero).
    pub fn solve(&self, b: &[Int]) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.nrows, "dimension mismatch");
        let t = self.transforms();
        let c = t.u.mul_vec(b);
        let mut y = vec![Int::zero(); self.ncols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                let (q, r) = ci.div_rem(&self.diag[i]);
                if !r.is_zero() {
                    return None;
                }
                y[i] = q;
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(t.v.mul_vec(&y))
    }

    /// Rational solution of `A·x = b` over ℚ.
    pub fn solve_rational(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(b.len(), self.nrows, "dimension mismatch");
        let t = self.transforms();
        let c = mul_vec_rat(&t.u, b);
        let mut y = vec![Rat::zero(); self.ncols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                y[i] = ci / Rat::from(self.diag[i].clone());
            } else if !ci.is_zero() {
                return None;
            }
        }
        Some(mul_vec_rat(&t.v, &y))
    }

    /// Solution of `A·x ≡ b (mod 1)` over ℚ/ℤ.
    ///
    /// With `U·A·V = S` and `y = V⁻¹x`, the system reads `dᵢyᵢ ≡ (U·b)ᵢ`:
    /// rows within the rank are always solvable (`yᵢ = lift((U·b)ᵢ)/dᵢ`),
    /// and solvability is exactly integrality of the tail of `U·b`.
    pub fn solve_mod1(&self, b: &[CircleValue]) -> Option<Vec<CircleValue>> {
        assert_eq!(b.len(), self.nrows, "dimension mismatch");
        let t = self.transforms();
        let b_rat: Vec<Rat> = b.iter().map(|c| c.lift()).collect();
        let c = mul_vec_rat(&t.u, &b_rat);
        let mut y = vec![Rat::zero(); self.ncols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                y[i] = canonical_lift_rat(ci) / Rat::from(self.diag[i].clone());
            } else if !ci.denom().is_one() {
                return None;
            }
        }
        let x = mul_vec_rat(&t.v, &y);
        Some(x.into_iter().map(CircleValue::new).collect())
    }

    /// Solution of `A·x ≡ b (mod n)` over ℤ, or `None`. With
    /// `U·A·V = S` the system reads `dᵢyᵢ ≡ (U·b)ᵢ (mod n)`: solvable iff
    /// `gcd(dᵢ, n)` divides the right side on every diagonal row and the
    /// tail is divisible by `n`.
    pub fn solve_mod(&self, b: &[Int], n: &Int) -> Option<Vec<Int>> {
        assert_eq!(b.len(), self.nrows, "dimension mismatch");
        assert!(n.is_positive());
        let t = self.transforms();
        let c = t.u.mul_vec(b);
        let mut y = vec![Int::zero(); self.ncols];
        for (i, ci) in c.iter().enumerate() {
            if i < self.rank {
                let g = self.diag[i].gcd(n);
                let (q, r) = ci.div_rem(&g);
                if !r.is_zero() {
                    return None;
                }
                let reduced_mod = n / &g;
                let d_over_g = &self.diag[i] / &g;
                let inv = mod_inverse(&d_over_g, &reduced_mod)?;
                y[i] = (q * inv).mod_floor(&reduced_mod);
            } else if !ci.mod_floor(n).is_zero() {
                return None;
            }
        }
        Some(
            t.v.mul_vec(&y)
                .into_iter()
                .map(|x| x.mod_floor(n))
                .collect(),
        )
    }

    /// Basis of the integer kernel lattice of `A` (columns of `V` past
    /// the rank), as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let t = self.transforms();
        (self.rank..self.ncols).map(|j| t.v.column(j)).collect()
    }
}

fn mul_vec_rat(m: &IntMatrix, x: &[Rat]) -> Vec<Rat> {
    m.mul_vec_rat(x)
}

/// Inverse of `a` modulo `n` (for `n = 1` everything inverts to 0).
fn mod_inverse(a: &Int, n: &Int) -> Option<Int> {
    if n.is_one() {
        return Some(Int::zero());
    }
    let e = a.extended_gcd(n);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(n))
}

/// Computes the Smith normal form with transforms.
pub fn snf(a: &IntMatrix) -> SnfDecomposition {
    snf_impl(a, true)
}

/// Rank and invariant factors only (no transforms; cheaper).
pub fn snf_diagonal(a: &IntMatrix) -> SnfDecomposition {
    snf_impl(a, false)
}

fn snf_impl(a: &IntMatrix, with_transforms: bool) -> SnfDecomposition {
    let mut w = SnfWork::new(a, with_transforms);
    let n = a.nrows.min(a.ncols);
    run_elimination(&mut w, n);

    let mut diag: Vec<Int> = (0..n).map(|i| w.a.get(i, i)).collect();
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    debug_assert!(diag[rank..].iter().all(|d| d.is_zero()));
    for d in &diag[..rank] {
        debug_assert!(d.is_positive());
    }
    // normalize: zero entries at the end stay zero
    diag.truncate(n);

    SnfDecomposition {
        nrows: a.nrows,
        ncols: a.ncols,
        diag,
        rank,
        trans: w.trans.map(|t| SnfTransforms {
            u: t.u,
            u_inv: t.u_inv_t.transpose(),
            v: t.v_t.transpose(),
            v_inv: t.v_inv,
        }),
    }
}

fn run_elimination(w: &mut SnfWork, n: usize) {
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = w.find_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        // clear row t and column t; reselect the pivot whenever a
        // division leaves a smaller remainder behind
        loop {
            let mut dirty = false;
            let pivot = w.a.get(t, t);
            debug_assert!(!pivot.is_zero());

            let col_rows: Vec<usize> = w.cols[t].iter().cloned().filter(|&i| i > t).collect();
            for i in col_rows {
                let v = w.a.get(i, t);
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                w.row_op(i, t, &q);
                if !w.a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            let row_cols: Vec<usize> = w.a.rows[t].range(t + 1..).map(|(&j, _)| j).collect();
            for j in row_cols {
                let v = w.a.get(t, j);
                if v.is_zero() {
                    continue;
                }
                let q = v.div_floor(&pivot);
                w.col_op(j, t, &q);
                if !w.a.get(t, j).is_zero() {
                    dirty = true;
                }
            }

            if !dirty {
                break;
            }
            // remainders are strictly smaller than |pivot|; re-pivot
            let (pi, pj) = w.find_pivot(t).expect("pivot cannot vanish");
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
        }

        // enforce the divisibility chain: if some remaining entry is not
        // divisible by the pivot, fold its row in and re-eliminate
        let pivot = w.a.get(t, t);
        if !pivot.is_one() && !(-&pivot).is_one() {
            let mut offending = None;
            'scan: for i in t + 1..w.a.nrows {
                for (&j, v) in w.a.rows[i].range(t + 1..) {
                    if !(v % &pivot).is_zero() {
                        offending = Some((i, j));
                        break 'scan;
                    }
                }
            }
            if let Some((i, _)) = offending {
                w.row_op(t, i, &-Int::one());
                continue; // redo position t
            }
        }

        if w.a.get(t, t).is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
}

/// Integer solution of `A·x = b` or `None` if no solution exists.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    snf(a).solve(b)
}

/// One-shot integer solve: carries the right-hand side through the
/// elimination instead of materializing `U`, and tracks only `V`.
/// Much cheaper than [`solve_integer`] when the decomposition will not
/// be reused.
pub fn solve_integer_once(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(b.len(), a.nrows(), "dimension mismatch");
    let mut w = SnfWork::new(a, false);
    w.rhs = Some(b.to_vec());
    w.v_only = Some(IntMatrix::identity(a.ncols));
    run_elimination(&mut w, a.nrows.min(a.ncols));
    let n = a.nrows.min(a.ncols);
    let diag: Vec<Int> = (0..n).map(|i| w.a.get(i, i)).collect();
    let rank = diag.iter().take_while(|d| !d.is_zero()).count();
    let c = w.rhs.take().unwrap();
    let mut y = vec![Int::zero(); a.ncols];
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            let (q, r) = ci.div_rem(&diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(w.v_only.take().unwrap().transpose().mul_vec(&y))
}

/// Solution of `A·x ≡ b (mod 1)` with `x` rational, or `None`.
pub fn solve_mod1(a: &IntMatrix, b: &[CircleValue]) -> Option<Vec<CircleValue>> {
    snf(a).solve_mod1(b)
}

/// Invariant factors of the quotient of the lattice spanned by the
/// columns of `outer` by the sublattice spanned by the columns of
/// `inner` (which must be contained in it). Returns the factors (one
/// per outer basis vector; 0 means a free summand) together with
/// generator vectors in the ambient coordinates.
pub fn lattice_quotient(
    outer: &[Vec<Int>],
    inner: &[Vec<Int>],
    dim: usize,
) -> (Vec<Int>, Vec<Vec<Int>>) {
    let r = outer.len();
    if r == 0 {
        assert!(inner.is_empty() || inner.iter().all(|c| c.iter().all(|x| x.is_zero())));
        return (vec![], vec![]);
    }
    let mut k = IntMatrix::zeros(dim, r);
    for (j, col) in outer.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !v.is_zero() {
                k.set(i, j, v.clone());
            }
        }
    }
    let k_snf = snf(&k);
    // coordinates of each inner vector in the outer basis
    let mut c = IntMatrix::zeros(r, inner.len());
    for (j, col) in inner.iter().enumerate() {
        let x = k_snf
            .solve(col)
            .expect("inner lattice not contained in outer lattice");
        for (i, v) in x.iter().enumerate() {
            if !v.is_zero() {
                c.set(i, j, v.clone());
            }
        }
    }
    let c_snf = snf(&c);
    let mut factors: Vec<Int> = c_snf.diag().to_vec();
    factors.resize(r, Int::zero());
    // generators: columns of K·U⁻¹
    let u_inv = &c_snf.transforms().u_inv;
    let gen_matrix = k.matmul(u_inv);
    let gens = (0..r).map(|j| gen_matrix.column(j)).collect();
    (factors, gens)
}
