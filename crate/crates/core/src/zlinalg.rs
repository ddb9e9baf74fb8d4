//! Exact linear algebra over the integers.
//!
//! Everything here works with arbitrary-precision entries. The central pieces
//! are [`smith_normal_form`], [`cokernel`] / [`quotient`] (which also return an
//! explicit change of basis so that classes can be transported between
//! presentations), and [`kernel`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix in row-major order. Either dimension may be zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IntegerMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        IntegerMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (k, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        acc += &self[(i, k)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(idx.len(), self.cols);
        for (r, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                out[(r, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> IntegerMatrix {
        let mut out = Self::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (c, &j) in idx.iter().enumerate() {
                out[(i, c)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Fraction-free (Bareiss) determinant of a square matrix.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(src, j)] * c;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += c * col[src]
    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, src)] * c;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, c)];
            self[(i, c)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] ({}x{})", self.rows, self.cols)
    }
}

/// Result of a Smith normal form computation: `u * a * v == d`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    /// Inverse of `u`, kept because it supplies representatives for quotient generators.
    pub u_inv: IntegerMatrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).take_while(|&i| !self.d[(i, i)].is_zero()).count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Computes `U`, `D`, `V` with `U·A·V = D`, both `U` and `V` unimodular and
/// `D` diagonal with nonnegative entries `d1 | d2 | ...` followed by zeros.
pub fn smith_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let s = smith(a);
    (s.u, s.d, s.v)
}

pub fn smith(a: &IntegerMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut u_inv = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    // Row/column operations applied to `d`, mirrored on the transforms.
    macro_rules! swap_r {
        ($i:expr, $j:expr) => {{
            d.swap_rows($i, $j);
            u.swap_rows($i, $j);
            u_inv.swap_cols($i, $j);
        }};
    }
    macro_rules! swap_c {
        ($i:expr, $j:expr) => {{
            d.swap_cols($i, $j);
            v.swap_cols($i, $j);
        }};
    }
    macro_rules! add_r {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: &BigInt = $c;
            d.add_row($dst, $src, c);
            u.add_row($dst, $src, c);
            u_inv.add_col($src, $dst, &-c);
        }};
    }
    macro_rules! add_c {
        ($dst:expr, $src:expr, $c:expr) => {{
            let c: &BigInt = $c;
            d.add_col($dst, $src, c);
            v.add_col($dst, $src, c);
        }};
    }

    for t in 0..m.min(n) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_r!(t, pi);
        swap_c!(t, pj);

        loop {
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = &d[(i, t)] / &d[(t, t)];
                    add_r!(i, t, &-q);
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = &d[(t, j)] / &d[(t, t)];
                    add_c!(j, t, &-q);
                }
            }
            // Remainders left in the pivot row/column: move the smallest in and repeat.
            let mut smaller: Option<(bool, usize)> = None;
            let mut smallest = d[(t, t)].abs();
            for i in t + 1..m {
                if !d[(i, t)].is_zero() && d[(i, t)].abs() < smallest {
                    smallest = d[(i, t)].abs();
                    smaller = Some((true, i));
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() && d[(t, j)].abs() < smallest {
                    smallest = d[(t, j)].abs();
                    smaller = Some((false, j));
                }
            }
            match smaller {
                Some((true, i)) => {
                    swap_r!(t, i);
                    continue;
                }
                Some((false, j)) => {
                    swap_c!(t, j);
                    continue;
                }
                None => {}
            }
            // Divisibility of the trailing block by the pivot.
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !d[(i, j)].is_multiple_of(&d[(t, t)]) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => add_r!(t, i, &BigInt::one()),
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
    }
    SmithForm { u, d, v, u_inv }
}

/// Row-style Hermite normal form: returns `(H, T, T^{-1})` with `H = T·A`,
/// `T` unimodular, `H` in row echelon form with positive pivots, entries above
/// each pivot reduced into `[0, pivot)`, and zero rows at the bottom.
pub fn hermite_rows(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix, IntegerMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut h = a.clone();
    let mut t = IntegerMatrix::identity(m);
    let mut t_inv = IntegerMatrix::identity(m);

    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if !h[(i, c)].is_zero() && best.is_none_or(|b| h[(i, c)].abs() < h[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            t.swap_rows(r, b);
            t_inv.swap_cols(r, b);
            let mut clean = true;
            for i in r + 1..m {
                if !h[(i, c)].is_zero() {
                    let q = -(&h[(i, c)] / &h[(r, c)]);
                    h.add_row(i, r, &q);
                    t.add_row(i, r, &q);
                    t_inv.add_col(r, i, &-&q);
                    if !h[(i, c)].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            t.negate_row(r);
            t_inv.negate_col(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row(i, r, &q);
            t.add_row(i, r, &q);
            t_inv.add_col(r, i, &-&q);
        }
        r += 1;
    }
    (h, t, t_inv)
}

/// Canonical basis (as columns) of the lattice spanned by the given columns.
pub fn lattice_basis(generators: &IntegerMatrix) -> IntegerMatrix {
    let (h, _, _) = hermite_rows(&generators.transpose());
    let nonzero: Vec<usize> = (0..h.rows())
        .filter(|&i| (0..h.cols()).any(|j| !h[(i, j)].is_zero()))
        .collect();
    h.select_rows(&nonzero).transpose()
}

/// Solves `basis · c = v` over the integers, if possible.
pub fn solve_integer(basis: &IntegerMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.rows(), v.len());
    let s = smith(basis);
    let y = s.u.mul_vec(v);
    let r = s.rank();
    let mut c_prime = vec![BigInt::zero(); basis.cols()];
    for i in 0..y.len() {
        if i < r {
            let (q, rem) = y[i].div_rem(&s.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            c_prime[i] = q;
        } else if !y[i].is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&c_prime))
}

/// Columns form a basis of `{ v : A·v = 0 }`, in canonical (Hermite) form.
pub fn kernel(a: &IntegerMatrix) -> IntegerMatrix {
    let s = smith(a);
    let r = s.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    let raw = s.v.select_cols(&idx);
    if raw.cols() == 0 {
        return IntegerMatrix::zeros(a.cols(), 0);
    }
    lattice_basis(&raw)
}

/// A finitely generated abelian group `Z/d1 + ... + Z/dt + Z^rank`, one
/// coordinate per cyclic summand with the torsion summands first. Quotients
/// come out in invariant-factor form; groups assembled from pieces keep the
/// summands in the order given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FGAbelianGroup {
    rank: usize,
    torsion: Vec<BigInt>,
    labels: Option<Vec<String>>,
}

impl FGAbelianGroup {
    pub fn new(rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        let two = BigInt::from(2);
        if torsion.iter().any(|d| d < &two) {
            return Err(Error::InvalidGroupElement(
                "torsion coefficients must be at least 2".into(),
            ));
        }
        Ok(FGAbelianGroup {
            rank,
            torsion,
            labels: None,
        })
    }

    pub fn trivial() -> Self {
        FGAbelianGroup {
            rank: 0,
            torsion: Vec::new(),
            labels: None,
        }
    }

    pub fn free(rank: usize) -> Self {
        FGAbelianGroup {
            rank,
            torsion: Vec::new(),
            labels: None,
        }
    }

    pub fn cyclic(order: i64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::trivial(),
            d => Self::new(0, vec![BigInt::from(d.abs())]).expect("valid cyclic order"),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.ngens() {
            return Err(Error::InvalidGroupElement(format!(
                "expected {} generator labels, got {}",
                self.ngens(),
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Orders of the coordinate generators; zero marks a free coordinate.
    pub fn orders(&self) -> Vec<BigInt> {
        let mut out = self.torsion.clone();
        out.extend(std::iter::repeat_n(BigInt::zero(), self.rank));
        out
    }

    /// Torsion invariant factors `d1 | d2 | ...`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        if self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0])) {
            return self.torsion.clone();
        }
        smith(&IntegerMatrix::diagonal(&self.torsion))
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect()
    }

    /// Same rank and invariant factors, ignoring summand order and labels.
    pub fn is_isomorphic(&self, other: &FGAbelianGroup) -> bool {
        self.rank == other.rank && self.invariant_factors() == other.invariant_factors()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.ngens()],
        }
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::InvalidGroupElement(format!(
                "expected {} coordinates, got {}",
                self.ngens(),
                coords.len()
            )));
        }
        let coords = reduce_coords(&self.orders(), coords);
        Ok(GroupElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = BigInt::one();
        GroupElement {
            group: self.clone(),
            coords,
        }
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        parts.extend(std::iter::repeat_n("Z".to_string(), self.rank));
        write!(f, "{}", parts.join(" + "))
    }
}

fn reduce_coords(orders: &[BigInt], coords: Vec<BigInt>) -> Vec<BigInt> {
    coords
        .into_iter()
        .zip(orders)
        .map(|(x, d)| if d.is_zero() { x } else { x.mod_floor(d) })
        .collect()
}

/// An element of a finitely generated abelian group, torsion coordinates reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FGAbelianGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if !self.group.is_isomorphic(&other.group) {
            return Err(Error::InvalidGroupElement(
                "adding elements of different groups".into(),
            ));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(coords)
    }

    pub fn scale(&self, c: &BigInt) -> GroupElement {
        let coords = self.coords.iter().map(|a| a * c).collect();
        self.group.element(coords).expect("same length")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A quotient `ambient / relations` in invariant-factor form together with the
/// basis change in both directions.
///
/// `coord_map` (g × m) sends ambient coordinates to group coordinates;
/// column `i` of `reps` (m × g) is an ambient representative of generator `i`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FGAbelianGroup,
    pub coord_map: IntegerMatrix,
    pub reps: IntegerMatrix,
}

impl Quotient {
    /// Group element represented by the ambient vector `v`.
    pub fn project(&self, v: &[BigInt]) -> GroupElement {
        self.group
            .element(self.coord_map.mul_vec(v))
            .expect("coordinate count matches")
    }

    /// Ambient representative of a group element.
    pub fn lift(&self, x: &GroupElement) -> Vec<BigInt> {
        self.reps.mul_vec(x.coords())
    }
}

/// `Z^rows / image(A)` with explicit basis change.
pub fn cokernel(a: &IntegerMatrix) -> Quotient {
    quotient(&vec![BigInt::zero(); a.rows()], a)
}

/// Quotient of the ambient group `⊕ Z/orders[i]` (order 0 meaning `Z`) by the
/// subgroup generated by the columns of `relations`.
///
/// Free generators are normalized canonically: the functionals onto the free
/// quotient are in Hermite form, and torsion functionals vanish on the pivot
/// coordinate of every free functional whose pivot is 1.
pub fn quotient(orders: &[BigInt], relations: &IntegerMatrix) -> Quotient {
    let m = orders.len();
    assert_eq!(
        relations.rows(),
        m,
        "relations must live in the ambient group"
    );
    let order_cols: Vec<Vec<BigInt>> = orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            let mut col = vec![BigInt::zero(); m];
            col[i] = d.abs();
            col
        })
        .collect();
    let full = relations.hstack(&IntegerMatrix::from_columns(m, &order_cols));

    if let Some(q) = diagonal_quotient(&full) {
        return q;
    }

    let s = smith(&full);
    let r = s.rank();
    let mut torsion_rows = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..r {
        if !s.d[(i, i)].is_one() {
            torsion_rows.push(i);
            torsion.push(s.d[(i, i)].clone());
        }
    }
    let free_rows: Vec<usize> = (r..m).collect();

    let mut psi = s.u.select_rows(&torsion_rows);
    let psi_reps = s.u_inv.select_cols(&torsion_rows);
    let (phi, _, t_inv) = hermite_rows(&s.u.select_rows(&free_rows));
    let mut phi_reps = s.u_inv.select_cols(&free_rows).mul(&t_inv);

    for i in 0..phi.rows() {
        let Some(p) = (0..m).find(|&j| !phi[(i, j)].is_zero()) else {
            continue;
        };
        if !phi[(i, p)].is_one() {
            continue;
        }
        for j in 0..psi.rows() {
            let c = psi[(j, p)].clone();
            if c.is_zero() {
                continue;
            }
            for col in 0..m {
                let v = &phi[(i, col)] * &c;
                psi[(j, col)] -= v;
            }
            for row in 0..m {
                let v = &psi_reps[(row, j)] * &c;
                phi_reps[(row, i)] += v;
            }
        }
    }
    for (j, d) in torsion.iter().enumerate() {
        for col in 0..m {
            let v = psi[(j, col)].mod_floor(d);
            psi[(j, col)] = v;
        }
    }

    let coord_map = stack_rows(&psi, &phi);
    let mut reps = psi_reps.hstack(&phi_reps);
    for i in 0..m {
        if !orders[i].is_zero() {
            for j in 0..reps.cols() {
                let v = reps[(i, j)].mod_floor(&orders[i].abs());
                reps[(i, j)] = v;
            }
        }
    }
    let group =
        FGAbelianGroup::new(phi.rows(), torsion).expect("Smith invariant factors are at least 2");
    Quotient {
        group,
        coord_map,
        reps,
    }
}

fn stack_rows(top: &IntegerMatrix, bottom: &IntegerMatrix) -> IntegerMatrix {
    top.transpose().hstack(&bottom.transpose()).transpose()
}

/// Shortcut for relation matrices that only impose orders on single
/// coordinates: keeps the ambient summands (stably sorted by order) whenever
/// they already form a divisibility chain.
fn diagonal_quotient(full: &IntegerMatrix) -> Option<Quotient> {
    let m = full.rows();
    let mut order = vec![BigInt::zero(); m];
    for j in 0..full.cols() {
        let nz: Vec<usize> = (0..m).filter(|&i| !full[(i, j)].is_zero()).collect();
        match nz.as_slice() {
            [] => {}
            [i] => order[*i] = order[*i].gcd(&full[(*i, j)]),
            _ => return None,
        }
    }
    let mut tors: Vec<usize> = (0..m).filter(|&i| order[i] > BigInt::one()).collect();
    tors.sort_by(|&a, &b| order[a].cmp(&order[b]));
    if tors
        .windows(2)
        .any(|w| !order[w[1]].is_multiple_of(&order[w[0]]))
    {
        return None;
    }
    let free: Vec<usize> = (0..m).filter(|&i| order[i].is_zero()).collect();
    let gens: Vec<usize> = tors.iter().chain(free.iter()).copied().collect();
    let mut coord_map = IntegerMatrix::zeros(gens.len(), m);
    for (g, &i) in gens.iter().enumerate() {
        coord_map[(g, i)] = BigInt::one();
    }
    let reps = coord_map.transpose();
    let group =
        FGAbelianGroup::new(free.len(), tors.iter().map(|&i| order[i].clone()).collect()).ok()?;
    Some(Quotient {
        group,
        coord_map,
        reps,
    })
}

/// Kernel of a homomorphism between ambient cyclic sums.
#[derive(Clone, Debug)]
pub struct HomKernel {
    /// Basis (columns) of the preimage lattice in the source ambient `Z^s`.
    pub lattice: IntegerMatrix,
    /// The kernel as a quotient of lattice coordinates by the source relations.
    pub quotient: Quotient,
}

impl HomKernel {
    pub fn group(&self) -> &FGAbelianGroup {
        &self.quotient.group
    }

    /// Ambient source representatives of the kernel generators (columns).
    pub fn reps(&self) -> IntegerMatrix {
        self.lattice.mul(&self.quotient.reps)
    }

    /// Kernel coordinates of an ambient vector, or `None` if it is not in the kernel.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<GroupElement> {
        let c = solve_integer(&self.lattice, v)?;
        Some(self.quotient.project(&c))
    }
}

/// Kernel of `phi: ⊕Z/src_orders → ⊕Z/tgt_orders` given by an integer matrix
/// (tgt × src) that is assumed well defined.
pub fn hom_kernel(src_orders: &[BigInt], tgt_orders: &[BigInt], phi: &IntegerMatrix) -> HomKernel {
    let s = src_orders.len();
    let t = tgt_orders.len();
    assert_eq!((phi.rows(), phi.cols()), (t, s));
    let tgt_rel: Vec<Vec<BigInt>> = tgt_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            let mut col = vec![BigInt::zero(); t];
            col[i] = -d.abs();
            col
        })
        .collect();
    let big = phi.hstack(&IntegerMatrix::from_columns(t, &tgt_rel));
    let ker = kernel(&big);
    let proj = ker.select_rows(&(0..s).collect::<Vec<_>>());
    let lattice = if proj.cols() == 0 {
        IntegerMatrix::zeros(s, 0)
    } else {
        lattice_basis(&proj)
    };

    let src_rel: Vec<Vec<BigInt>> = src_orders
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .map(|(i, d)| {
            let mut v = vec![BigInt::zero(); s];
            v[i] = d.abs();
            solve_integer(&lattice, &v).expect("source relations lie in the kernel lattice")
        })
        .collect();
    let rel = IntegerMatrix::from_columns(lattice.cols(), &src_rel);
    let quotient = quotient(&vec![BigInt::zero(); lattice.cols()], &rel);
    HomKernel { lattice, quotient }
}

/// True when `v` lies in the span of the columns of `gens`.
pub fn in_lattice(gens: &IntegerMatrix, v: &[BigInt]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if gens.cols() == 0 {
        return false;
    }
    solve_integer(gens, v).is_some()
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn bigs(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle: invariant factors via gcds of k×k minors.
    fn minors_gcd(a: &IntegerMatrix, k: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = combos(n - 1, k);
            for mut c in combos(n - 1, k - 1) {
                c.push(n - 1);
                out.push(c);
            }
            out
        }
        let mut g = BigInt::zero();
        for r in combos(a.rows(), k) {
            for c in combos(a.cols(), k) {
                let sub = a.select_rows(&r).select_cols(&c);
                g = g.gcd(&sub.determinant());
            }
        }
        g
    }

    fn check_snf(a: &IntegerMatrix) {
        let s = smith(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(a.rows()));
        assert!(s.d.is_diagonal());
        let f = s.invariant_factors();
        assert!(f.iter().all(|d| d.is_positive()));
        assert!(f.windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    }

    #[test]
    fn snf_identity() {
        let a = IntegerMatrix::identity(2);
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(u, IntegerMatrix::identity(2));
        assert_eq!(v, IntegerMatrix::identity(2));
        assert_eq!(d, IntegerMatrix::identity(2));
    }

    #[test]
    fn snf_two_by_two() {
        let a = IntegerMatrix::from_rows(&[[2, 4], [6, 8]]);
        let (_, d, _) = smith_normal_form(&a);
        assert_eq!(d, IntegerMatrix::from_rows(&[[2, 0], [0, 4]]));
        // oracle: d1 = gcd of entries, d1*d2 = |det|
        assert_eq!(minors_gcd(&a, 1), big(2));
        assert_eq!(minors_gcd(&a, 2), big(8));
        check_snf(&a);
    }

    #[test]
    fn snf_zero_one_by_one() {
        let a = IntegerMatrix::from_rows(&[[0]]);
        let (_, d, _) = smith_normal_form(&a);
        assert_eq!(d, IntegerMatrix::from_rows(&[[0]]));
    }

    #[test]
    fn snf_empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (2, 0)] {
            let a = IntegerMatrix::zeros(r, c);
            let s = smith(&a);
            assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        }
    }

    #[test]
    fn snf_factors_match_minor_oracle() {
        let a = IntegerMatrix::from_rows(&[[6, 4, 2], [4, 8, -2], [10, 12, 0]]);
        let s = smith(&a);
        let f = s.invariant_factors();
        let mut prev = BigInt::one();
        for (k, d) in f.iter().enumerate() {
            let g = minors_gcd(&a, k + 1);
            assert_eq!(&(&prev * d), &g);
            prev = g;
        }
        check_snf(&a);
    }

    #[test]
    fn cokernel_of_diagonal_inclusion() {
        let q = cokernel(&IntegerMatrix::from_rows(&[[1], [1]]));
        assert_eq!(q.group, FGAbelianGroup::free(1));
        // (1,0) and (0,1) are identified up to sign
        let a = q.project(&bigs(&[1, 0]));
        let b = q.project(&bigs(&[0, 1]));
        assert_eq!(a.coords(), &bigs(&[1]));
        assert_eq!(b.coords(), &bigs(&[-1]));
    }

    #[test]
    fn cokernel_small_cases() {
        assert_eq!(
            cokernel(&IntegerMatrix::from_rows(&[[2]])).group,
            FGAbelianGroup::cyclic(2)
        );
        assert_eq!(
            cokernel(&IntegerMatrix::from_rows(&[[0]])).group,
            FGAbelianGroup::free(1)
        );
    }

    #[test]
    fn quotient_reps_are_sections() {
        let orders = bigs(&[0, 2, 0, 2]);
        let rel = IntegerMatrix::from_rows(&[[1], [0], [1], [0]]);
        let q = quotient(&orders, &rel);
        assert_eq!(q.group.to_string(), "Z/2 + Z/2 + Z");
        for i in 0..q.group.ngens() {
            let rep = q.reps.column(i);
            assert_eq!(q.project(&rep), q.group.generator(i));
        }
        // the free functional ignores the torsion summands
        assert_eq!(q.project(&bigs(&[1, 0, 0, 0])).coords(), &bigs(&[0, 0, 1]));
    }

    #[test]
    fn diagonal_shortcut_keeps_summands() {
        let q = quotient(&bigs(&[24, 2, 2]), &IntegerMatrix::zeros(3, 0));
        assert_eq!(q.group.to_string(), "Z/2 + Z/2 + Z/24");
        assert_eq!(q.project(&bigs(&[1, 0, 0])).coords(), &bigs(&[0, 0, 1]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&IntegerMatrix::identity(3)).cols(), 0);
        let k = kernel(&IntegerMatrix::from_rows(&[[1, 1]]));
        assert_eq!(k, IntegerMatrix::from_rows(&[[1], [-1]]));
        let k = kernel(&IntegerMatrix::from_rows(&[[0]]));
        assert_eq!(k, IntegerMatrix::from_rows(&[[1]]));
    }

    #[test]
    fn kernel_small_lattice_enumeration() {
        // brute force: all vectors with entries in [-3,3] annihilated by A lie in span(kernel)
        let a = IntegerMatrix::from_rows(&[[2, 4, 6], [1, 2, 3]]);
        let k = kernel(&a);
        assert_eq!(k.cols(), 2);
        for x in -3..=3i64 {
            for y in -3..=3i64 {
                for z in -3..=3i64 {
                    let v = bigs(&[x, y, z]);
                    let image = a.mul_vec(&v);
                    if image.iter().all(Zero::is_zero) {
                        assert!(in_lattice(&k, &v), "{:?}", v);
                    }
                }
            }
        }
    }

    #[test]
    fn hom_kernel_torsion_target() {
        // Z -> Z/2, 1 -> 1 has kernel 2Z ≅ Z
        let hk = hom_kernel(&bigs(&[0]), &bigs(&[2]), &IntegerMatrix::from_rows(&[[1]]));
        assert_eq!(hk.group(), &FGAbelianGroup::free(1));
        assert_eq!(hk.reps(), IntegerMatrix::from_rows(&[[2]]));
        // Z/2 -> Z/24, 1 -> 12 is injective
        let hk = hom_kernel(
            &bigs(&[2]),
            &bigs(&[24]),
            &IntegerMatrix::from_rows(&[[12]]),
        );
        assert!(hk.group().is_trivial());
    }

    #[test]
    fn group_validation() {
        let z6 = FGAbelianGroup::new(0, bigs(&[2, 3])).unwrap();
        assert!(z6.is_isomorphic(&FGAbelianGroup::cyclic(6)));
        assert!(FGAbelianGroup::new(0, bigs(&[24, 2]))
            .unwrap()
            .is_isomorphic(&FGAbelianGroup::new(0, bigs(&[2, 24])).unwrap()));
        assert!(FGAbelianGroup::new(0, bigs(&[1])).is_err());
        assert!(FGAbelianGroup::new(1, bigs(&[2, 24])).is_ok());
        let g = FGAbelianGroup::new(1, bigs(&[2])).unwrap();
        assert!(g.clone().with_labels(vec!["a".into()]).is_err());
        let e = g.element_i64(&[3, -5]).unwrap();
        assert_eq!(e.coords(), &bigs(&[1, -5]));
    }
}
