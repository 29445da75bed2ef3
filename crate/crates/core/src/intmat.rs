//! Dense matrices over the integers with arbitrary-precision entries.
//!
//! Everything downstream (boundary operators, gauge blocks, unimodular
//! transforms) is carried by [`IntMatrix`]. Normal forms are computed with
//! their transforms so that callers can verify results by plain
//! multiplication.

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("{op} needs a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("entry count {len} does not match {rows}x{cols}")]
    EntryCount {
        rows: usize,
        cols: usize,
        len: usize,
    },
    #[error("hermite form by column operations needs rows <= cols, got {rows}x{cols}")]
    TallMatrix { rows: usize, cols: usize },
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("elementary matrix needs s = +1 or -1 and distinct in-range positions")]
    BadElementary,
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, MatrixError>;

/// Row-major dense integer matrix. Empty shapes (0 rows or 0 columns) are
/// legal and behave as the zero map between the corresponding free modules.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
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

    /// Builds a matrix from nested rows of small integers. Panics on ragged
    /// input, so it is meant for literals in code and tests.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| x.into()));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a `rows x cols` matrix; useful when one dimension is zero and
    /// nested literals cannot express the shape.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// `I_p + s * E_{l,i}` with zero-based positions.
    pub fn elementary(p: usize, l: usize, i: usize, s: i64) -> Result<Self> {
        if (s != 1 && s != -1) || l >= p || i >= p || l == i {
            return Err(MatrixError::BadElementary);
        }
        let mut m = Self::identity(p);
        m[(l, i)] = BigInt::from(s);
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(MatrixError::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = &self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(l, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<Self> {
        self.zip_with(other, "add", |a, b| a + b)
    }

    pub fn sub(&self, other: &IntMatrix) -> Result<Self> {
        self.zip_with(other, "sub", |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &IntMatrix,
        op: &'static str,
        f: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(MatrixError::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        assert!(rows.end <= self.rows && cols.end <= self.cols);
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    /// Horizontal concatenation `[self other]`.
    pub fn hconcat(&self, other: &IntMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(MatrixError::ShapeMismatch {
                op: "hconcat",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let c = self.cols;
        Ok(Self::from_fn(self.rows, c + other.cols, |i, j| {
            if j < c {
                self[(i, j)].clone()
            } else {
                other[(i, j - c)].clone()
            }
        }))
    }

    /// Assembles a 2x2 block matrix; the blocks must have compatible shapes.
    pub fn from_blocks(
        top_left: &IntMatrix,
        top_right: &IntMatrix,
        bottom_left: &IntMatrix,
        bottom_right: &IntMatrix,
    ) -> Result<Self> {
        let (r0, c0) = top_left.shape();
        if top_right.rows != r0
            || bottom_left.cols != c0
            || bottom_right.rows != bottom_left.rows
            || bottom_right.cols != top_right.cols
        {
            return Err(MatrixError::ShapeMismatch {
                op: "from_blocks",
                left: top_left.shape(),
                right: bottom_right.shape(),
            });
        }
        Ok(Self::from_fn(
            r0 + bottom_left.rows,
            c0 + top_right.cols,
            |i, j| match (i < r0, j < c0) {
                (true, true) => top_left[(i, j)].clone(),
                (true, false) => top_right[(i, j - c0)].clone(),
                (false, true) => bottom_left[(i - r0, j)].clone(),
                (false, false) => bottom_right[(i - r0, j - c0)].clone(),
            },
        ))
    }

    /// Reverses both the row order and the column order.
    pub fn reversed(&self) -> Self {
        let (r, c) = self.shape();
        Self::from_fn(r, c, |i, j| self[(r - 1 - i, c - 1 - j)].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let x = &mut self.data[i * self.cols + j];
            *x = -std::mem::take(x);
        }
    }

    /// Replaces rows `a`, `b` by `(x a + y b, z a + w b)`.
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, z, w]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = x * &ra + y * &rb;
            self.data[b * self.cols + j] = z * &ra + w * &rb;
        }
    }

    /// Replaces columns `a`, `b` by `(x a + y b, z a + w b)`.
    fn combine_cols(&mut self, a: usize, b: usize, [x, y, z, w]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let ca = self.data[i * self.cols + a].clone();
            let cb = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = x * &ca + y * &cb;
            self.data[i * self.cols + b] = z * &ca + w * &cb;
        }
    }

    /// Largest absolute value among the entries (0 for empty matrices).
    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Parses the text format: a `rows cols` header followed by `rows*cols`
    /// decimal integers in row-major order, separated by arbitrary whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Tokens::new(text);
        let m = parse_one(&mut tokens)?;
        if let Some(tok) = tokens.next() {
            return Err(MatrixError::Parse {
                line: tok.line,
                column: tok.column,
                message: format!("unexpected trailing token `{}`", tok.text),
            });
        }
        Ok(m)
    }

    /// Parses consecutive matrices from one text (blank lines between them are
    /// allowed but not required).
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let mut tokens = Tokens::new(text);
        let mut out = Vec::new();
        while tokens.peek().is_some() {
            out.push(parse_one(&mut tokens)?);
        }
        Ok(out)
    }

    /// Serializes to the text format accepted by [`IntMatrix::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "IntMatrix{}x{}{:?}",
            self.rows,
            self.cols,
            self.to_rows()
        )
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Tokens<'a> {
    items: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut end = (1, 1);
        for (ln, line) in text.lines().enumerate() {
            let mut offset = 0;
            for piece in line.split_whitespace() {
                let start = line[offset..].find(piece).unwrap() + offset;
                items.push(Token {
                    text: piece,
                    line: ln + 1,
                    column: start + 1,
                });
                offset = start + piece.len();
            }
            end = (ln + 1, line.len() + 1);
        }
        Tokens { items, pos: 0, end }
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.items.get(self.pos)
    }

    fn next(&mut self) -> Option<&Token<'a>> {
        let t = self.items.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect<T: std::str::FromStr>(&mut self, what: &str) -> Result<T> {
        let end = self.end;
        match self.next() {
            None => Err(MatrixError::Parse {
                line: end.0,
                column: end.1,
                message: format!("unexpected end of input, expected {what}"),
            }),
            Some(tok) => tok.text.parse::<T>().map_err(|_| MatrixError::Parse {
                line: tok.line,
                column: tok.column,
                message: format!("expected {what}, found `{}`", tok.text),
            }),
        }
    }
}

fn parse_one(tokens: &mut Tokens<'_>) -> Result<IntMatrix> {
    let rows: usize = tokens.expect("row count")?;
    let cols: usize = tokens.expect("column count")?;
    let mut data = Vec::with_capacity(rows.saturating_mul(cols).min(1 << 20));
    for _ in 0..rows * cols {
        data.push(tokens.expect::<BigInt>("integer entry")?);
    }
    IntMatrix::new(rows, cols, data)
}

/// Extended gcd with a nonnegative gcd: returns `(g, x, y)` with
/// `a*x + b*y = g`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination. The 0x0
/// determinant is 1.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            op: "det",
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&r| !a[(r, k)].is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
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
    let d = a[(n - 1, n - 1)].clone();
    Ok(if negate { -d } else { d })
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    match det(m) {
        Ok(d) => d.abs().is_one(),
        Err(_) => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnfResult {
    /// Upper triangular: `h[(i, j)] == 0` for `i > j`.
    pub h: IntMatrix,
    /// Unimodular column transform with `b * u == h`.
    pub u: IntMatrix,
}

/// Column-style Hermite form: finds unimodular `U` with `B U` upper
/// triangular, nonnegative diagonal, and entries right of a positive pivot
/// reduced into `[0, pivot)`. Requires `rows <= cols`.
pub fn hnf(b: &IntMatrix) -> Result<HnfResult> {
    let (p, q) = b.shape();
    if p > q {
        return Err(MatrixError::TallMatrix { rows: p, cols: q });
    }
    let mut h = b.clone();
    let mut u = IntMatrix::identity(q);
    for i in (0..p).rev() {
        for j in 0..i {
            if h[(i, j)].is_zero() {
                continue;
            }
            let a = h[(i, i)].clone();
            let c = h[(i, j)].clone();
            let (g, x, y) = ext_gcd(&a, &c);
            // new col i = x*col_i + y*col_j, new col j = -(c/g)*col_i + (a/g)*col_j
            let coeffs = [x, y, -(&c / &g), &a / &g];
            h.combine_cols(i, j, &coeffs);
            u.combine_cols(i, j, &coeffs);
        }
        if h[(i, i)].is_negative() {
            h.negate_col(i);
            u.negate_col(i);
        }
        let pivot = h[(i, i)].clone();
        if pivot.is_positive() {
            for j in i + 1..q {
                let k = h[(i, j)].div_floor(&pivot);
                if !k.is_zero() {
                    let k = -k;
                    h.add_col_multiple(j, i, &k);
                    u.add_col_multiple(j, i, &k);
                }
            }
        }
    }
    Ok(HnfResult { h, u })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    /// Rectangular diagonal matrix, same shape as the input.
    pub s: IntMatrix,
    /// Unimodular row transform.
    pub u: IntMatrix,
    /// Unimodular column transform; `u * m * v == s`.
    pub v: IntMatrix,
    /// `s_1, ..., s_min(rows, cols)`, nonnegative, each dividing the next.
    pub elementary_divisors: Vec<BigInt>,
    /// `d_0 = 1, d_1, ..., d_min(rows, cols)`.
    pub determinantal_divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.elementary_divisors
            .iter()
            .take_while(|s| !s.is_zero())
            .count()
    }
}

/// Smith normal form by gcd-pivot elimination, tracking both transforms.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (p, q) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(p);
    let mut v = IntMatrix::identity(q);
    let r = p.min(q);
    'outer: for t in 0..r {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..p {
                for j in t..q {
                    let x = &a[(i, j)];
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break 'outer;
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);

            for i in t + 1..p {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let piv = a[(t, t)].clone();
                let x = a[(i, t)].clone();
                if (&x % &piv).is_zero() {
                    let k = -(&x / &piv);
                    a.add_row_multiple(i, t, &k);
                    u.add_row_multiple(i, t, &k);
                } else {
                    let (g, s1, s2) = ext_gcd(&piv, &x);
                    let coeffs = [s1, s2, -(&x / &g), &piv / &g];
                    a.combine_rows(t, i, &coeffs);
                    u.combine_rows(t, i, &coeffs);
                }
            }
            for j in t + 1..q {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let piv = a[(t, t)].clone();
                let x = a[(t, j)].clone();
                if (&x % &piv).is_zero() {
                    let k = -(&x / &piv);
                    a.add_col_multiple(j, t, &k);
                    v.add_col_multiple(j, t, &k);
                } else {
                    let (g, s1, s2) = ext_gcd(&piv, &x);
                    let coeffs = [s1, s2, -(&x / &g), &piv / &g];
                    a.combine_cols(t, j, &coeffs);
                    v.combine_cols(t, j, &coeffs);
                }
            }
            let clean_col = (t + 1..p).all(|i| a[(i, t)].is_zero());
            let clean_row = (t + 1..q).all(|j| a[(t, j)].is_zero());
            if !(clean_col && clean_row) {
                continue;
            }
            let piv = a[(t, t)].clone();
            let bad_row = (t + 1..p).find(|&i| (t + 1..q).any(|j| !(&a[(i, j)] % &piv).is_zero()));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let elementary_divisors: Vec<BigInt> = (0..r).map(|k| a[(k, k)].clone()).collect();
    let mut determinantal_divisors = Vec::with_capacity(r + 1);
    let mut acc = BigInt::one();
    determinantal_divisors.push(acc.clone());
    for s in &elementary_divisors {
        acc *= s;
        determinantal_divisors.push(acc.clone());
    }
    SnfResult {
        s: a,
        u,
        v,
        elementary_divisors,
        determinantal_divisors,
    }
}

/// `d_0, ..., d_min(rows, cols)`; `d_k` for larger `k` is 0, see
/// [`determinantal_divisor`].
pub fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    snf(m).determinantal_divisors
}

pub fn determinantal_divisor(m: &IntMatrix, k: usize) -> BigInt {
    determinantal_divisors(m)
        .get(k)
        .cloned()
        .unwrap_or_else(BigInt::zero)
}

/// A `p x q` matrix is onto `Z^p` exactly when `d_p = 1`.
pub fn is_surjective(m: &IntMatrix) -> bool {
    determinantal_divisor(m, m.rows()).is_one()
}

/// Exact inverse of a unimodular matrix, read off its Smith form.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            op: "inverse",
            rows: m.rows,
            cols: m.cols,
        });
    }
    let f = snf(m);
    if !f.elementary_divisors.iter().all(One::is_one) {
        return Err(MatrixError::NotUnimodular);
    }
    // U M V = I  =>  M^{-1} = V U
    f.v.mul(&f.u)
}
