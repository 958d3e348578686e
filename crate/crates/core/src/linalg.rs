//! Sparse exact linear algebra over a [`Scalar`] field.
//!
//! Everything the Clifford side needs reduces to three primitives: products
//! of sparse matrices, the rank of a family of sparse vectors, and the
//! solution space of a homogeneous linear system. Representation matrices
//! built from signed permutations give systems whose equations mostly have
//! one or two terms, so [`LinearSystem`] resolves those with a weighted
//! union-find and only runs Gauss-Jordan elimination on what is left.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Sparse vector as a list of `(index, value)` pairs, sorted by index, with
/// no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize<S: Scalar>(mut terms: Vec<(usize, S)>) -> SparseVec<S> {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<S> = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.clone() + v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[derive(Clone, PartialEq)]
pub struct SparseMatrix<S> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, S::one())
    }

    pub fn scalar(n: usize, value: S) -> Self {
        let mut m = Self::zeros(n, n);
        if !value.is_zero() {
            for (i, row) in m.rows.iter_mut().enumerate() {
                row.push((i, value.clone()));
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<S>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<S>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| S::from_int(v)).collect())
            .collect();
        Self::from_dense(&dense)
    }

    pub fn from_rows(nrows: usize, ncols: usize, rows: Vec<SparseVec<S>>) -> Self {
        assert_eq!(rows.len(), nrows);
        let rows: Vec<_> = rows.into_iter().map(normalize).collect();
        debug_assert!(rows.iter().all(|r| r.iter().all(|(j, _)| *j < ncols)));
        SparseMatrix { nrows, ncols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &[(usize, S)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        match self.rows[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = vec![vec![S::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec<S>> = vec![Vec::new(); self.ncols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        SparseMatrix {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|(j, v)| (*j, v.clone() * factor.clone())).collect())
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "matrix shapes do not compose");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: Vec<(usize, S)> = Vec::new();
                for (k, a) in row {
                    for (j, b) in &other.rows[*k] {
                        acc.push((*j, a.clone() * b.clone()));
                    }
                }
                normalize(acc)
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut rows = Vec::with_capacity(nrows);
        for a_row in &self.rows {
            for b_row in &other.rows {
                let mut row = Vec::with_capacity(a_row.len() * b_row.len());
                for (ja, a) in a_row {
                    for (jb, b) in b_row {
                        row.push((ja * other.ncols + jb, a.clone() * b.clone()));
                    }
                }
                rows.push(row);
            }
        }
        SparseMatrix { nrows, ncols, rows }
    }

    fn zip_rows(&self, other: &Self, negate_other: bool) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut terms = a.clone();
                terms.extend(b.iter().map(|(j, v)| {
                    (*j, if negate_other { -v.clone() } else { v.clone() })
                }));
                normalize(terms)
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Row-major flattening, used when matrices are treated as vectors.
    pub fn flatten(&self) -> SparseVec<S> {
        self.entries()
            .map(|(r, c, v)| (r * self.ncols + c, v.clone()))
            .collect()
    }

    /// True when every row and every column holds exactly one nonzero.
    pub fn is_monomial(&self) -> bool {
        if self.nrows != self.ncols || self.rows.iter().any(|r| r.len() != 1) {
            return false;
        }
        let mut seen = vec![false; self.ncols];
        self.rows.iter().all(|r| !std::mem::replace(&mut seen[r[0].0], true))
    }
}

impl<S: Scalar> Add for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn add(self, rhs: Self) -> SparseMatrix<S> {
        self.zip_rows(rhs, false)
    }
}

impl<S: Scalar> Sub for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn sub(self, rhs: Self) -> SparseMatrix<S> {
        self.zip_rows(rhs, true)
    }
}

impl<S: Scalar> Mul for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn mul(self, rhs: Self) -> SparseMatrix<S> {
        self.matmul(rhs)
    }
}

impl<S: Scalar> Neg for &SparseMatrix<S> {
    type Output = SparseMatrix<S>;
    fn neg(self) -> SparseMatrix<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Debug for SparseMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} [", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank of a family of sparse vectors, by incremental echelon reduction.
pub fn rank<S, I>(vectors: I) -> usize
where
    S: Scalar,
    I: IntoIterator<Item = SparseVec<S>>,
{
    let mut echelon = Echelon::default();
    vectors.into_iter().filter(|v| echelon.insert(v.clone())).count()
}

/// Row echelon basis keyed by leading index; each stored row has leading
/// coefficient one.
pub struct Echelon<S> {
    pivots: HashMap<usize, BTreeMap<usize, S>>,
}

impl<S> Default for Echelon<S> {
    fn default() -> Self {
        Echelon { pivots: HashMap::new() }
    }
}

impl<S: Scalar> Echelon<S> {
    /// Inserts `v`; returns whether it was independent of the rows so far.
    pub fn insert(&mut self, v: SparseVec<S>) -> bool {
        let mut v: BTreeMap<usize, S> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        loop {
            let Some((&lead, coef)) = v.iter().next() else {
                return false;
            };
            let coef = coef.clone();
            match self.pivots.get(&lead) {
                Some(p) => {
                    for (j, x) in p {
                        let updated = v.get(j).cloned().unwrap_or_else(S::zero) - coef.clone() * x.clone();
                        if updated.is_zero() {
                            v.remove(j);
                        } else {
                            v.insert(*j, updated);
                        }
                    }
                }
                None => {
                    let inv = S::one() / coef;
                    let row = v.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Basis of the solution space of a homogeneous system. `free[k]` is a
/// coordinate where basis vector `k` is one and every other basis vector is
/// zero, so coordinates of a solution `x` in this basis are `x[free[k]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Nullspace<S> {
    pub nvars: usize,
    pub basis: Vec<SparseVec<S>>,
    pub free: Vec<usize>,
}

impl<S> Nullspace<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Homogeneous linear system `Σ a_ij x_j = 0` over `nvars` unknowns.
pub struct LinearSystem<S> {
    parent: Vec<usize>,
    // x_i = weight_i · x_parent(i)
    weight: Vec<S>,
    forced_zero: Vec<bool>,
    general: Vec<SparseVec<S>>,
}

impl<S: Scalar> LinearSystem<S> {
    pub fn new(nvars: usize) -> Self {
        LinearSystem {
            parent: (0..nvars).collect(),
            weight: vec![S::one(); nvars],
            forced_zero: vec![false; nvars],
            general: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.parent.len()
    }

    fn find(&mut self, i: usize) -> (usize, S) {
        let mut path = Vec::new();
        let mut cur = i;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Compress from the node nearest the root outwards.
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                let w = self.weight[node].clone() * self.weight[p].clone();
                self.weight[node] = w;
                self.parent[node] = root;
            }
        }
        (root, if i == root { S::one() } else { self.weight[i].clone() })
    }

    pub fn add_equation(&mut self, terms: Vec<(usize, S)>) {
        let terms = normalize(terms);
        match terms.len() {
            0 => {}
            1 => {
                let (root, _) = self.find(terms[0].0);
                self.forced_zero[root] = true;
            }
            2 => {
                let (a, alpha) = terms[0].clone();
                let (b, beta) = terms[1].clone();
                // x_a = c · x_b
                let c = -beta / alpha;
                let (ra, wa) = self.find(a);
                let (rb, wb) = self.find(b);
                if ra == rb {
                    if wa != c * wb {
                        self.forced_zero[ra] = true;
                    }
                } else {
                    self.parent[ra] = rb;
                    self.weight[ra] = c * wb / wa;
                    if self.forced_zero[ra] {
                        self.forced_zero[rb] = true;
                    }
                }
            }
            _ => self.general.push(terms),
        }
    }

    /// Rewrites the deferred equations over component roots and reduces
    /// them to Gauss-Jordan form. Returns the live roots, the reduced rows
    /// keyed by pivot root, and the final root/weight of every variable.
    #[allow(clippy::type_complexity)]
    fn reduce(&mut self) -> (Vec<usize>, BTreeMap<usize, BTreeMap<usize, S>>, Vec<(usize, S)>) {
        let n = self.nvars();
        let resolved: Vec<(usize, S)> = (0..n).map(|i| self.find(i)).collect();
        let live: Vec<usize> = (0..n)
            .filter(|&i| self.parent[i] == i && !self.forced_zero[i])
            .collect();

        let mut rref: BTreeMap<usize, BTreeMap<usize, S>> = BTreeMap::new();
        for eq in std::mem::take(&mut self.general) {
            let mut row: BTreeMap<usize, S> = BTreeMap::new();
            for (i, a) in eq {
                let (root, w) = &resolved[i];
                if self.forced_zero[*root] {
                    continue;
                }
                let v = row.remove(root).unwrap_or_else(S::zero) + a * w.clone();
                if !v.is_zero() {
                    row.insert(*root, v);
                }
            }
            // eliminate existing pivots
            let pivot_cols: Vec<usize> = row.keys().filter(|k| rref.contains_key(k)).copied().collect();
            for pc in pivot_cols {
                let Some(coef) = row.get(&pc).cloned() else { continue };
                for (j, x) in &rref[&pc] {
                    let v = row.remove(j).unwrap_or_else(S::zero) - coef.clone() * x.clone();
                    if !v.is_zero() {
                        row.insert(*j, v);
                    }
                }
            }
            let Some((&lead, coef)) = row.iter().next() else { continue };
            let inv = S::one() / coef.clone();
            let row: BTreeMap<usize, S> = row.into_iter().map(|(j, x)| (j, x * inv.clone())).collect();
            for other in rref.values_mut() {
                if let Some(c) = other.get(&lead).cloned() {
                    for (j, x) in &row {
                        let v = other.remove(j).unwrap_or_else(S::zero) - c.clone() * x.clone();
                        if !v.is_zero() {
                            other.insert(*j, v);
                        }
                    }
                }
            }
            rref.insert(lead, row);
        }
        (live, rref, resolved)
    }

    /// Dimension of the solution space.
    pub fn nullity(mut self) -> usize {
        let (live, rref, _) = self.reduce();
        live.len() - rref.len()
    }

    pub fn nullspace(mut self) -> Nullspace<S> {
        let (live, rref, resolved) = self.reduce();
        let free_roots: Vec<usize> = live.iter().copied().filter(|r| !rref.contains_key(r)).collect();

        // Value of each live root in each basis vector.
        let mut root_values: Vec<HashMap<usize, S>> = free_roots
            .iter()
            .map(|&f| HashMap::from([(f, S::one())]))
            .collect();
        for (pivot, row) in &rref {
            for (k, &f) in free_roots.iter().enumerate() {
                if let Some(c) = row.get(&f) {
                    root_values[k].insert(*pivot, -c.clone());
                }
            }
        }

        let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, (root, _)) in resolved.iter().enumerate() {
            members.entry(*root).or_default().push(i);
        }

        let basis = root_values
            .iter()
            .map(|values| {
                let mut v: Vec<(usize, S)> = Vec::new();
                for (root, rv) in values {
                    for &i in &members[root] {
                        v.push((i, resolved[i].1.clone() * rv.clone()));
                    }
                }
                normalize(v)
            })
            .collect();
        Nullspace {
            nvars: resolved.len(),
            basis,
            free: free_roots,
        }
    }
}
