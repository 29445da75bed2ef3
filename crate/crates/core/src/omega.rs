//! Deciding when `B + C N` can be made invertible over the integers, and
//! producing a witness `N` when it can.
//!
//! The decision is arithmetic: `[B C]` must be onto `Z^p` and `det(B)` must
//! be `±1` modulo the gcd of the entries of `C`. The witness comes from an
//! explicit reduction: Hermite form on `B`, Smith form on `C`, Bézout row
//! clearing to a diagonal, then corner folding down to
//! `diag(±det B, 1, ..., 1)`, after which one entry of `N` finishes the job.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::intmat::{self, ext_gcd, IntMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmegaError {
    #[error("B must be square, got {rows}x{cols}")]
    NonSquareB { rows: usize, cols: usize },
    #[error("B has {b_rows} rows but C has {c_rows}")]
    RowMismatch { b_rows: usize, c_rows: usize },
    #[error("brute-force search over {cells} entries refused (limit 9)")]
    SearchTooLarge { cells: usize },
    #[error("internal fault: {0}")]
    Fault(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// `B` is `p x p`, `C` is `p x r`; `r` may be zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaInstance {
    b: IntMatrix,
    c: IntMatrix,
}

impl OmegaInstance {
    pub fn new(b: IntMatrix, c: IntMatrix) -> Result<Self, OmegaError> {
        if !b.is_square() {
            return Err(OmegaError::NonSquareB {
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        if b.rows() != c.rows() {
            return Err(OmegaError::RowMismatch {
                b_rows: b.rows(),
                c_rows: c.rows(),
            });
        }
        Ok(OmegaInstance { b, c })
    }

    pub fn b(&self) -> &IntMatrix {
        &self.b
    }

    pub fn c(&self) -> &IntMatrix {
        &self.c
    }

    pub fn p(&self) -> usize {
        self.b.rows()
    }

    pub fn r(&self) -> usize {
        self.c.cols()
    }

    /// `det(B + C N)`, checking that `N` is `r x p`.
    pub fn evaluate(&self, n: &IntMatrix) -> Result<BigInt, OmegaError> {
        let sum = self.b.add(&self.c.mul(n)?)?;
        Ok(intmat::det(&sum)?)
    }

    pub fn is_witness(&self, n: &IntMatrix) -> bool {
        n.shape() == (self.r(), self.p()) && self.evaluate(n).is_ok_and(|d| d.abs().is_one())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaObstruction {
    /// `[B C]` is not onto; carries `d_p([B C])`.
    NotSurjective { divisor: BigInt },
    /// `det(B)` reduced modulo `d_1(C)` is neither `1` nor `-1`. With modulus
    /// zero the residue is the determinant itself.
    DeterminantResidue {
        determinant: BigInt,
        modulus: BigInt,
        residue: BigInt,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaVerdict {
    decided_yes: bool,
    witness: Option<IntMatrix>,
    obstruction: Option<OmegaObstruction>,
}

impl OmegaVerdict {
    fn yes() -> Self {
        OmegaVerdict {
            decided_yes: true,
            witness: None,
            obstruction: None,
        }
    }

    fn no(obstruction: OmegaObstruction) -> Self {
        OmegaVerdict {
            decided_yes: false,
            witness: None,
            obstruction: Some(obstruction),
        }
    }

    /// Only constructs a positive verdict after checking `det(B + C N) = ±1`.
    fn with_witness(inst: &OmegaInstance, n: IntMatrix) -> Result<Self, OmegaError> {
        if !inst.is_witness(&n) {
            return Err(OmegaError::Fault(format!(
                "constructed N does not verify: det(B + CN) = {:?}",
                inst.evaluate(&n).ok()
            )));
        }
        Ok(OmegaVerdict {
            decided_yes: true,
            witness: Some(n),
            obstruction: None,
        })
    }

    pub fn decided_yes(&self) -> bool {
        self.decided_yes
    }

    pub fn witness(&self) -> Option<&IntMatrix> {
        self.witness.as_ref()
    }

    pub fn obstruction(&self) -> Option<&OmegaObstruction> {
        self.obstruction.as_ref()
    }
}

/// Nonnegative residue of `x` modulo `m`; modulo zero is the identity.
pub fn residue(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(&m.abs())
    }
}

/// `x ≡ ±1 (mod m)`, where congruence modulo 0 means equality.
pub fn is_unit_mod(x: &BigInt, m: &BigInt) -> bool {
    if m.is_zero() {
        return x.abs().is_one();
    }
    let m = m.abs();
    if m.is_one() {
        return true;
    }
    let r = x.mod_floor(&m);
    r.is_one() || r == &m - 1u32
}

pub fn omega_decide(inst: &OmegaInstance) -> Result<OmegaVerdict, OmegaError> {
    let p = inst.p();
    let joined = inst.b.hconcat(&inst.c)?;
    let dp = intmat::determinantal_divisor(&joined, p);
    if !dp.is_one() {
        return Ok(OmegaVerdict::no(OmegaObstruction::NotSurjective {
            divisor: dp,
        }));
    }
    let det_b = intmat::det(&inst.b)?;
    let d1 = intmat::determinantal_divisor(&inst.c, 1);
    if !is_unit_mod(&det_b, &d1) {
        return Ok(OmegaVerdict::no(OmegaObstruction::DeterminantResidue {
            residue: residue(&det_b, &d1),
            determinant: det_b,
            modulus: d1,
        }));
    }
    Ok(OmegaVerdict::yes())
}

pub fn omega_construct(inst: &OmegaInstance) -> Result<OmegaVerdict, OmegaError> {
    let decision = omega_decide(inst)?;
    if !decision.decided_yes {
        return Ok(decision);
    }
    let n = construct_witness(inst)?;
    OmegaVerdict::with_witness(inst, n)
}

/// Exhaustive search over `N` with entries in `[-bound, bound]`, in
/// lexicographic order. Refuses when `r * p > 9`.
pub fn omega_bruteforce(inst: &OmegaInstance, bound: u64) -> Result<Option<IntMatrix>, OmegaError> {
    let (r, p) = (inst.r(), inst.p());
    let cells = r * p;
    if cells > 9 {
        return Err(OmegaError::SearchTooLarge { cells });
    }
    let lo = -(bound as i64);
    let mut digits = vec![lo; cells];
    loop {
        let n = IntMatrix::from_fn(r, p, |i, j| BigInt::from(digits[i * p + j]));
        if inst.is_witness(&n) {
            return Ok(Some(n));
        }
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == cells {
                return Ok(None);
            }
            if digits[pos] < bound as i64 {
                digits[pos] += 1;
                break;
            }
            digits[pos] = lo;
            pos += 1;
        }
    }
}

/// Bookkeeping for the reduction. At every step
///
/// ```text
///   cur_b = L (B0 + C0 N) R,    cur_c = L C0 W
/// ```
///
/// where `(B0, C0)` is the square starting pair. `R^{-1}` is kept alongside
/// `R` so that additions `cur_b += cur_c Y` can be pulled back into `N`.
struct Reduction {
    cur_b: IntMatrix,
    cur_c: IntMatrix,
    r: IntMatrix,
    r_inv: IntMatrix,
    w: IntMatrix,
    n: IntMatrix,
}

impl Reduction {
    fn new(b0: IntMatrix, c0: IntMatrix) -> Self {
        let p = b0.rows();
        Reduction {
            cur_b: b0,
            cur_c: c0,
            r: IntMatrix::identity(p),
            r_inv: IntMatrix::identity(p),
            w: IntMatrix::identity(p),
            n: IntMatrix::zeros(p, p),
        }
    }

    /// `col[dst] += k col[src]` on B only.
    fn b_col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.cur_b.add_col_multiple(dst, src, k);
        self.r.add_col_multiple(dst, src, k);
        // (R E)^{-1} = E^{-1} R^{-1}: row[src] -= k row[dst]
        self.r_inv.add_row_multiple(src, dst, &-k);
    }

    fn b_col_swap(&mut self, a: usize, b: usize) {
        self.cur_b.swap_cols(a, b);
        self.r.swap_cols(a, b);
        self.r_inv.swap_rows(a, b);
    }

    /// `row[dst] += k row[src]` on both B and C.
    fn row_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.cur_b.add_row_multiple(dst, src, k);
        self.cur_c.add_row_multiple(dst, src, k);
    }

    /// `col[dst] += k col[src]` on C only.
    fn c_col_add(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.cur_c.add_col_multiple(dst, src, k);
        self.w.add_col_multiple(dst, src, k);
    }

    /// `cur_b += cur_c Y`, recorded as `N += W Y R^{-1}`.
    fn add_cy(&mut self, y: &IntMatrix) -> Result<(), OmegaError> {
        self.cur_b = self.cur_b.add(&self.cur_c.mul(y)?)?;
        let delta = self.w.mul(y)?.mul(&self.r_inv)?;
        self.n = self.n.add(&delta)?;
        Ok(())
    }
}

fn construct_witness(inst: &OmegaInstance) -> Result<IntMatrix, OmegaError> {
    let (p, r) = (inst.p(), inst.r());
    if p == 0 {
        return Ok(IntMatrix::zeros(r, 0));
    }
    // Smith form of C: P C Q = S. Pad/truncate S to a square diag(c_1..c_p)
    // (zeros past the rank); then C Q E = P^{-1} Csq with E the r x p
    // embedding, so a square witness N' lifts to N = Q E N'.
    let f = intmat::snf(&inst.c);
    let csq = IntMatrix::from_fn(p, p, |i, j| {
        if i == j && i < r {
            f.s[(i, i)].clone()
        } else {
            BigInt::zero()
        }
    });
    let b0 = f.u.mul(&inst.b)?;
    let diag: Vec<BigInt> = (0..p).map(|i| csq[(i, i)].clone()).collect();

    let mut red = Reduction::new(b0.clone(), csq.clone());

    // (1) Hermite: B0 U upper triangular.
    let h = intmat::hnf(&red.cur_b)?;
    red.cur_b = h.h;
    red.r = h.u;
    red.r_inv = intmat::inverse_unimodular(&red.r)?;

    // (2) Clear everything right of the diagonal, row by row, with
    // B U + C Y where u_j b_j + v_j c_j = 1.
    for j in 0..p {
        let bj = red.cur_b[(j, j)].clone();
        let (g, uj, vj) = ext_gcd(&bj, &diag[j]);
        if !g.is_one() {
            return Err(OmegaError::Fault(format!(
                "diagonal entry {bj} not coprime to {}",
                diag[j]
            )));
        }
        let mut y = IntMatrix::zeros(p, p);
        let row: Vec<BigInt> = (j + 1..p).map(|l| red.cur_b[(j, l)].clone()).collect();
        for (off, bjl) in row.iter().enumerate() {
            let l = j + 1 + off;
            if bjl.is_zero() {
                continue;
            }
            red.b_col_add(l, j, &-(&uj * bjl));
            y[(j, l)] = -(&vj * bjl);
        }
        red.add_cy(&y)?;
    }
    check_diagonal(&red.cur_b)?;

    // (3) Fold the bottom-right corner up, one index at a time, keeping C
    // diagonal: afterwards B = diag(±det B0, 1, ..., 1).
    for m in (1..p).rev() {
        let bm = red.cur_b[(m, m)].clone();
        let (g, um, vm) = ext_gcd(&bm, &diag[m]);
        if !g.is_one() {
            return Err(OmegaError::Fault(format!(
                "corner entry {bm} not coprime to {}",
                diag[m]
            )));
        }
        // B X + C Y puts a 1 at (m, m-1)
        red.b_col_add(m - 1, m, &um);
        let mut y = IntMatrix::zeros(p, p);
        y[(m, m - 1)] = vm;
        red.add_cy(&y)?;
        // row[m-1] -= b_{m-1} row[m]
        let b_prev = red.cur_b[(m - 1, m - 1)].clone();
        red.row_add(m - 1, m, &-&b_prev);
        // col[m] -= b_m col[m-1], then swap the two columns
        red.b_col_add(m, m - 1, &-&bm);
        red.b_col_swap(m - 1, m);
        // C is back to diagonal after col[m] += (b_{m-1} c_m / c_{m-1}) col[m-1]
        let stray = red.cur_c[(m - 1, m)].clone();
        if !stray.is_zero() {
            let cprev = &diag[m - 1];
            if cprev.is_zero() || !(&stray % cprev).is_zero() {
                return Err(OmegaError::Fault("divisibility chain broken".into()));
            }
            red.c_col_add(m, m - 1, &-(&stray / cprev));
        }
        if red.cur_c != csq {
            return Err(OmegaError::Fault(
                "C left Smith form during reduction".into(),
            ));
        }
    }
    check_diagonal(&red.cur_b)?;

    // (4) beta + c_1 x = ±1 for one entry x.
    let beta = red.cur_b[(0, 0)].clone();
    let c1 = diag[0].clone();
    let x = if c1.is_zero() {
        BigInt::zero()
    } else {
        let candidates = [BigInt::one() - &beta, -BigInt::one() - &beta];
        candidates
            .iter()
            .filter(|t| (*t % &c1).is_zero())
            .map(|t| t / &c1)
            .min_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)))
            .ok_or_else(|| OmegaError::Fault("determinant residue not ±1".into()))?
    };
    let mut y = IntMatrix::zeros(p, p);
    y[(0, 0)] = x;
    red.add_cy(&y)?;

    // N = Q E N'
    let n_sq = red.n;
    let lifted = IntMatrix::from_fn(r, p, |i, j| {
        if i < p {
            n_sq[(i, j)].clone()
        } else {
            BigInt::zero()
        }
    });
    Ok(f.v.mul(&lifted)?)
}

fn check_diagonal(b: &IntMatrix) -> Result<(), OmegaError> {
    let p = b.rows();
    for i in 0..p {
        for j in 0..p {
            if i != j && !b[(i, j)].is_zero() {
                return Err(OmegaError::Fault(format!(
                    "off-diagonal entry at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}
