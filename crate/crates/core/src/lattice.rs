//! Integer exponent lattices: the antisymmetric commutation form and
//! solution lattices of `e^T Ω f = c` systems via Hermite normal form.

use std::fmt;

use crate::Error;

pub const MAX_GENS: usize = 12;

/// Exponent vector of a monomial over at most [`MAX_GENS`] generators.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec {
    len: u8,
    e: [i32; MAX_GENS],
}

impl ExpVec {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_GENS, "at most {MAX_GENS} generators");
        ExpVec {
            len: len as u8,
            e: [0; MAX_GENS],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.e[i] = 1;
        v
    }

    pub fn from_slice(xs: &[i32]) -> Self {
        let mut v = Self::zero(xs.len());
        v.e[..xs.len()].copy_from_slice(xs);
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.e[..self.len as usize]
    }

    pub fn get(&self, i: usize) -> i32 {
        self.e[i]
    }

    pub fn set(&mut self, i: usize, v: i32) {
        self.e[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut v = *self;
        for i in 0..MAX_GENS {
            v.e[i] += o.e[i];
        }
        v
    }

    pub fn scale(&self, k: i32) -> Self {
        let mut v = *self;
        for x in v.e.iter_mut() {
            *x *= k;
        }
        v
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_slice())
    }
}

/// Antisymmetric integer matrix: `x_i x_j = q^{Ω_ij} x_j x_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommMatrix {
    m: usize,
    entries: Vec<i64>,
}

impl CommMatrix {
    pub fn zero(m: usize) -> Self {
        CommMatrix {
            m,
            entries: vec![0; m * m],
        }
    }

    /// Builds the matrix from its strictly upper part `(i, j, Ω_ij)`, `i < j`.
    pub fn from_upper(m: usize, upper: &[(usize, usize, i64)]) -> Result<Self, Error> {
        let mut c = Self::zero(m);
        for &(i, j, w) in upper {
            if i >= m || j >= m || i == j {
                return Err(Error::Invalid(format!("bad commutation entry ({i}, {j})")));
            }
            c.entries[i * m + j] = w;
            c.entries[j * m + i] = -w;
        }
        Ok(c)
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, Error> {
        let m = rows.len();
        let mut c = Self::zero(m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: row.len(),
                });
            }
            for (j, &w) in row.iter().enumerate() {
                c.entries[i * m + j] = w;
            }
        }
        for i in 0..m {
            for j in 0..m {
                if c.get(i, j) != -c.get(j, i) {
                    return Err(Error::Invalid("commutation matrix is not antisymmetric".into()));
                }
            }
        }
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.m + j]
    }
}

/// `e^T Ω f`: the integer `c` with `x^e x^f = q^c x^f x^e`.
pub fn omega(e: &ExpVec, f: &ExpVec, om: &CommMatrix) -> Result<i64, Error> {
    let m = om.dim();
    for v in [e, f] {
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: v.len(),
            });
        }
    }
    let mut acc = 0i64;
    for i in 0..m {
        let ei = e.get(i) as i64;
        if ei == 0 {
            continue;
        }
        for j in 0..m {
            acc += ei * om.get(i, j) * f.get(j) as i64;
        }
    }
    Ok(acc)
}

/// A lattice in `Z^m` given by a basis in row Hermite normal form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<i64>>,
}

/// Solution set of an integer constraint system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeSolution {
    /// `offset + lattice`; the offset is reduced modulo the lattice.
    Affine {
        offset: Vec<i64>,
        lattice: Lattice,
    },
    NoSolution,
}

impl Lattice {
    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Lattice { dim, basis }
    }

    /// Lattice spanned by arbitrary integer vectors (rows), in canonical form.
    pub fn span(dim: usize, gens: &[Vec<i64>]) -> Self {
        Lattice {
            dim,
            basis: row_hnf(gens, dim),
        }
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn pivot(row: &[i64]) -> usize {
        row.iter().position(|&x| x != 0).expect("HNF rows are nonzero")
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = Self::pivot(row);
            if rest[p] % row[p] != 0 {
                return None;
            }
            let c = rest[p] / row[p];
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= c * b;
            }
            coords.push(c);
        }
        rest.iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for row in &self.basis {
            let p = Self::pivot(row);
            let c = out[p].div_euclid(row[p]);
            for (x, b) in out.iter_mut().zip(row) {
                *x -= c * b;
            }
        }
        out
    }

    /// Index of the sublattice spanned by `gens` inside `self`; `None` when
    /// some generator lies outside or the ranks differ.
    pub fn index_of(&self, gens: &[Vec<i64>]) -> Option<u64> {
        let sub = Lattice::span(self.dim, gens);
        if sub.rank() != self.rank() {
            return None;
        }
        let mut mat = Vec::with_capacity(sub.rank());
        for row in &sub.basis {
            mat.push(self.coordinates(row)?);
        }
        Some(det(&mat).unsigned_abs())
    }
}

fn det(mat: &[Vec<i64>]) -> i64 {
    // rows of the coordinate matrix are already triangular-friendly but not
    // guaranteed triangular; fraction-free Bareiss elimination
    let n = mat.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = mat.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Row Hermite normal form: echelon rows with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
fn row_hnf(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out_rows = 0usize;
    for col in 0..dim {
        if out_rows == a.len() {
            break;
        }
        // Euclid on the column among rows out_rows..
        loop {
            let nz: Vec<usize> = (out_rows..a.len()).filter(|&i| a[i][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            a.swap(out_rows, best);
            let mut done = true;
            for i in out_rows + 1..a.len() {
                if a[i][col] != 0 {
                    let c = a[i][col].div_euclid(a[out_rows][col]);
                    let pr = a[out_rows].clone();
                    for (x, p) in a[i].iter_mut().zip(&pr) {
                        *x -= c * p;
                    }
                    if a[i][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[out_rows][col] == 0 {
            continue;
        }
        if a[out_rows][col] < 0 {
            for x in a[out_rows].iter_mut() {
                *x = -*x;
            }
        }
        let piv = a[out_rows][col];
        let pr = a[out_rows].clone();
        #[allow(clippy::needless_range_loop)]
        for i in 0..out_rows {
            let c = a[i][col].div_euclid(piv);
            if c != 0 {
                for (x, p) in a[i].iter_mut().zip(&pr) {
                    *x -= c * p;
                }
            }
        }
        out_rows += 1;
    }
    a.truncate(out_rows);
    a.into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.into_iter().map(|x| x as i64).collect())
        .collect()
}

/// Solves `e^T Ω f = c_f` for all constraints `(f, c_f)` over the integers.
///
/// Column operations reduce the constraint matrix to lower echelon form
/// `A U = [H | 0]`; the trailing columns of `U` span the kernel and the
/// triangular system in `H` yields one particular solution.
pub fn centralizer_lattice(om: &CommMatrix, constraints: &[(ExpVec, i64)]) -> Result<LatticeSolution, Error> {
    let m = om.dim();
    let mut a: Vec<Vec<i128>> = Vec::with_capacity(constraints.len());
    let mut rhs: Vec<i128> = Vec::with_capacity(constraints.len());
    for (f, c) in constraints {
        if f.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: f.len(),
            });
        }
        let row = (0..m)
            .map(|i| (0..m).map(|j| om.get(i, j) as i128 * f.get(j) as i128).sum())
            .collect();
        a.push(row);
        rhs.push(*c as i128);
    }
    // U starts as the identity; columns are transformed alongside A.
    let mut u: Vec<Vec<i128>> = (0..m).map(|i| (0..m).map(|j| i128::from(i == j)).collect()).collect();
    let col_op = |mat: &mut Vec<Vec<i128>>, dst: usize, src: usize, c: i128| {
        for row in mat.iter_mut() {
            row[dst] -= c * row[src];
        }
    };
    let col_swap = |mat: &mut Vec<Vec<i128>>, x: usize, y: usize| {
        for row in mat.iter_mut() {
            row.swap(x, y);
        }
    };
    let mut pivots: Vec<Option<usize>> = vec![None; a.len()];
    let mut rank = 0usize;
    for r in 0..a.len() {
        if rank == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (rank..m).filter(|&j| a[r][j] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&j| a[r][j].abs()).unwrap();
            col_swap(&mut a, rank, best);
            col_swap(&mut u, rank, best);
            let mut done = true;
            for j in rank + 1..m {
                if a[r][j] != 0 {
                    let c = a[r][j].div_euclid(a[r][rank]);
                    col_op(&mut a, j, rank, c);
                    col_op(&mut u, j, rank, c);
                    if a[r][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][rank] != 0 {
            pivots[r] = Some(rank);
            rank += 1;
        }
    }
    // forward substitution for y with H y = c
    let mut y = vec![0i128; m];
    for r in 0..a.len() {
        let partial: i128 = (0..rank).map(|j| a[r][j] * y[j]).sum();
        match pivots[r] {
            Some(p) => {
                let need = rhs[r] - partial;
                if need % a[r][p] != 0 {
                    return Ok(LatticeSolution::NoSolution);
                }
                y[p] = need / a[r][p];
            }
            None => {
                if partial != rhs[r] {
                    return Ok(LatticeSolution::NoSolution);
                }
            }
        }
    }
    let offset: Vec<i64> = (0..m)
        .map(|i| (0..m).map(|j| u[i][j] * y[j]).sum::<i128>() as i64)
        .collect();
    let kernel: Vec<Vec<i64>> = (rank..m).map(|j| (0..m).map(|i| u[i][j] as i64).collect()).collect();
    let lattice = Lattice::span(m, &kernel);
    let offset = lattice.reduce(&offset);
    Ok(LatticeSolution::Affine { offset, lattice })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qweyl_omega(n: usize) -> CommMatrix {
        let upper: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1, 1)).collect();
        CommMatrix::from_upper(2 * n, &upper).unwrap()
    }

    #[test]
    fn omega_examples() {
        let om = qweyl_omega(1);
        let a = ExpVec::unit(2, 0);
        let b = ExpVec::unit(2, 1);
        assert_eq!(omega(&a, &b, &om).unwrap(), 1);
        assert_eq!(omega(&a, &a, &om).unwrap(), 0);
        assert!(omega(&a, &ExpVec::unit(3, 0), &om).is_err());
    }

    #[test]
    fn empty_constraints_give_full_lattice() {
        let om = qweyl_omega(2);
        match centralizer_lattice(&om, &[]).unwrap() {
            LatticeSolution::Affine { offset, lattice } => {
                assert_eq!(lattice, Lattice::full(4));
                assert_eq!(offset, vec![0; 4]);
            }
            LatticeSolution::NoSolution => panic!("unexpected"),
        }
    }

    #[test]
    fn infeasible_system_is_reported() {
        // e^T Ω a = 1 and e^T Ω a^2 = 1 cannot both hold
        let om = qweyl_omega(1);
        let a = ExpVec::unit(2, 0);
        let res = centralizer_lattice(&om, &[(a, 1), (a.scale(2), 1)]).unwrap();
        assert_eq!(res, LatticeSolution::NoSolution);
        // parity obstruction: e^T Ω a^2 = 1
        let res = centralizer_lattice(&om, &[(a.scale(2), 1)]).unwrap();
        assert_eq!(res, LatticeSolution::NoSolution);
    }

    #[test]
    fn hnf_is_canonical() {
        let l1 = Lattice::span(3, &[vec![2, 4, 6], vec![1, 1, 1]]);
        let l2 = Lattice::span(3, &[vec![1, 1, 1], vec![0, 2, 4], vec![3, 5, 7]]);
        assert_eq!(l1, l2);
        assert_eq!(l1.basis()[0][0], 1);
        assert_eq!(l1.index_of(&[vec![2, 4, 6], vec![1, 1, 1]]), Some(1));
        assert_eq!(l1.index_of(&[vec![2, 2, 2], vec![0, 2, 4]]), Some(2));
    }

    fn arb_upper(m: usize) -> impl Strategy<Value = CommMatrix> {
        prop::collection::vec(-2i64..3, m * (m - 1) / 2).prop_map(move |ws| {
            let mut upper = Vec::new();
            let mut k = 0;
            for i in 0..m {
                for j in i + 1..m {
                    upper.push((i, j, ws[k]));
                    k += 1;
                }
            }
            CommMatrix::from_upper(m, &upper).unwrap()
        })
    }

    proptest! {
        #[test]
        fn solutions_satisfy_constraints(
            om in arb_upper(5),
            fs in prop::collection::vec((prop::collection::vec(-2i32..3, 5), -2i64..3), 0..4),
        ) {
            let cons: Vec<(ExpVec, i64)> = fs.iter().map(|(f, c)| (ExpVec::from_slice(f), *c)).collect();
            let res = centralizer_lattice(&om, &cons).unwrap();
            if let LatticeSolution::Affine { offset, lattice } = &res {
                let off = ExpVec::from_slice(&offset.iter().map(|&x| x as i32).collect::<Vec<_>>());
                for (f, c) in &cons {
                    prop_assert_eq!(omega(&off, f, &om).unwrap(), *c);
                    for b in lattice.basis() {
                        let bv = ExpVec::from_slice(&b.iter().map(|&x| x as i32).collect::<Vec<_>>());
                        prop_assert_eq!(omega(&bv, f, &om).unwrap(), 0);
                    }
                }
                // rank-nullity for the homogeneous part
                let rows: Vec<Vec<i64>> = cons.iter().map(|(f, _)| {
                    (0..5).map(|i| (0..5).map(|j| om.get(i, j) * f.get(j) as i64).sum()).collect()
                }).collect();
                let row_rank = Lattice::span(5, &rows).rank();
                prop_assert_eq!(lattice.rank() + row_rank, 5);
            }
            prop_assert_eq!(centralizer_lattice(&om, &cons).unwrap(), res);
        }
    }
}
