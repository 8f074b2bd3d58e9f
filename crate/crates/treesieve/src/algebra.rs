//! Exact arithmetic kernel: arbitrary-precision determinants, prime fields
//! carrying a root of unity of prescribed order, coefficient extraction by
//! interpolation, and Chinese-remainder reconstruction of bounded integers.
//!
//! Everything in here is integer or finite-field arithmetic; no floating
//! point is used anywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("duplicate interpolation point {0}")]
    DuplicatePoint(u64),
    #[error("coefficient of degree {degree} needs more than {points} evaluation points")]
    NotEnoughPoints { degree: usize, points: usize },
    #[error("duplicate modulus {0} in residue ledger")]
    DuplicatePrime(u64),
    #[error("modulus product must exceed twice the bound for unique reconstruction")]
    InsufficientPrimes,
    #[error("residues reconstruct to a value outside the stated bound")]
    InconsistentResidues,
}

/// Prime field `F_q` together with an element `zeta` of multiplicative order
/// exactly `order`. All elements are canonical representatives in `0..q`.
///
/// `q` stays below 2^62 so that sums of two elements fit in a `u64` and
/// products fit in a `u128`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    pub q: u64,
    pub order: u64,
    pub zeta: u64,
}

impl PrimeField {
    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.q - 2)
    }

    /// Canonical image of an arbitrary signed integer.
    pub fn from_bigint(&self, v: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        let mut r = v % &q;
        if r.sign() == num_bigint::Sign::Minus {
            r += &q;
        }
        r.to_u64().expect("reduced residue fits in u64")
    }
}

/// Deterministic Miller-Rabin, valid for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Samples a prime `q` of the requested bit size with `q ≡ 1 (mod order)`,
/// together with an element of multiplicative order exactly `order`.
///
/// `order ≥ 1`, `20 ≤ bits ≤ 62`.
pub fn random_prime_with_root(order: u64, bits: u32, rng: &mut impl Rng) -> PrimeField {
    assert!(order >= 1, "root order must be positive");
    assert!((20..=62).contains(&bits), "prime size out of range");
    let lo = 1u64 << (bits - 1);
    let hi = (1u64 << bits) - 1;
    let divisors = prime_divisors(order);
    loop {
        // q = order*m + 1 in [lo, hi]
        let m_lo = lo / order + 1;
        let m_hi = (hi - 1) / order;
        let m = rng.gen_range(m_lo..=m_hi);
        let q = order * m + 1;
        if q < lo || q > hi || !is_prime_u64(q) {
            continue;
        }
        let f = PrimeField { q, order, zeta: 0 };
        // zeta = g^((q-1)/order) has order dividing `order`; keep it only if
        // the order is exact.
        for _ in 0..64 {
            let g = rng.gen_range(2..q);
            let zeta = f.pow(g, (q - 1) / order);
            if zeta == 0 {
                continue;
            }
            let exact = (order == 1 && zeta == 1)
                || (order > 1
                    && zeta != 1
                    && divisors.iter().all(|&l| f.pow(zeta, order / l) != 1));
            if exact {
                return PrimeField { q, order, zeta };
            }
        }
    }
}

/// Sum of the i-th powers of all `order`-th roots of unity: `order` when
/// `order` divides `i`, otherwise 0. Evaluated by actual summation inside a
/// sampled prime field and checked against the closed form.
pub fn roots_power_sum(order: u64, i: u64) -> BigInt {
    assert!(order >= 1);
    let mut rng = ChaCha12Rng::seed_from_u64(0x726f6f7473);
    let f = random_prime_with_root(order, 40, &mut rng);
    let zi = f.pow(f.zeta, i);
    let mut sum = 0u64;
    let mut term = 1u64;
    for _ in 0..order {
        sum = f.add(sum, term);
        term = f.mul(term, zi);
    }
    let closed = if i % order == 0 { order } else { 0 };
    assert_eq!(sum, closed % f.q, "power sum disagrees with closed form");
    BigInt::from(closed)
}

/// Determinant of a square integer matrix by fraction-free (Bareiss)
/// elimination; every intermediate division is exact.
pub fn det_exact(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    for r in rows {
        assert_eq!(r.len(), n, "matrix must be square");
    }
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Determinant over `F_q` by Gaussian elimination, pivoting on the first
/// nonzero entry of each column. Operates on a flat row-major buffer.
pub fn det_mod_in_place(f: &PrimeField, m: &mut [u64], n: usize) -> u64 {
    debug_assert_eq!(m.len(), n * n);
    if n == 0 {
        return 1;
    }
    let mut det = 1u64;
    for k in 0..n {
        let pivot_row = match (k..n).find(|&i| m[i * n + k] != 0) {
            Some(i) => i,
            None => return 0,
        };
        if pivot_row != k {
            for j in k..n {
                m.swap(pivot_row * n + j, k * n + j);
            }
            det = f.neg(det);
        }
        let pivot = m[k * n + k];
        det = f.mul(det, pivot);
        let inv_pivot = f.inv(pivot);
        for i in k + 1..n {
            let factor = f.mul(m[i * n + k], inv_pivot);
            if factor == 0 {
                continue;
            }
            for j in k..n {
                let sub = f.mul(factor, m[k * n + j]);
                m[i * n + j] = f.sub(m[i * n + j], sub);
            }
        }
    }
    det
}

/// Determinant over `F_q` of a matrix given as nested rows.
pub fn det_mod(f: &PrimeField, rows: &[Vec<u64>]) -> u64 {
    let n = rows.len();
    for r in rows {
        assert_eq!(r.len(), n, "matrix must be square");
    }
    let mut flat: Vec<u64> = rows.iter().flatten().map(|&v| v % f.q).collect();
    det_mod_in_place(f, &mut flat, n)
}

/// Dense univariate polynomial over a prime field with a hard degree cap.
/// Coefficient `i` of `coeffs` is the coefficient of `y^i`; the declared
/// bound is never exceeded.
#[derive(Debug, Clone)]
pub struct DensePoly {
    coeffs: Vec<u64>,
}

impl DensePoly {
    pub fn one(bound: usize) -> Self {
        let mut coeffs = vec![0; bound + 1];
        coeffs[0] = 1;
        DensePoly { coeffs }
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn degree_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Multiply by `(1 + c·y)`, truncating at the degree bound.
    pub fn mul_affine(&mut self, f: &PrimeField, c: u64) {
        for i in (1..self.coeffs.len()).rev() {
            let shifted = f.mul(self.coeffs[i - 1], c);
            self.coeffs[i] = f.add(self.coeffs[i], shifted);
        }
    }

    /// Multiply by `(y - alpha)`; the degree bound must leave room.
    pub fn mul_linear_root(&mut self, f: &PrimeField, alpha: u64) {
        let n = self.coeffs.len();
        assert!(self.coeffs[n - 1] == 0, "degree bound exceeded");
        for i in (1..n).rev() {
            self.coeffs[i] = f.sub(self.coeffs[i - 1], f.mul(alpha, self.coeffs[i]));
        }
        self.coeffs[0] = f.mul(f.neg(alpha), self.coeffs[0]);
    }

    /// Exact quotient by `(y - alpha)` when `alpha` is a root.
    pub fn div_linear_root(&self, f: &PrimeField, alpha: u64) -> DensePoly {
        let n = self.coeffs.len();
        let mut out = vec![0u64; n];
        let mut carry = 0u64;
        for i in (1..n).rev() {
            carry = f.add(self.coeffs[i], f.mul(alpha, carry));
            out[i - 1] = carry;
        }
        DensePoly { coeffs: out }
    }

    pub fn eval(&self, f: &PrimeField, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }
}

/// Per-point multipliers `w_j` such that the coefficient of `y^d` of the
/// interpolating polynomial through `(points[j], v_j)` equals `Σ v_j·w_j`.
pub fn coeff_weights(f: &PrimeField, points: &[u64], d: usize) -> Result<Vec<u64>, RingError> {
    let n = points.len();
    if d >= n {
        return Err(RingError::NotEnoughPoints {
            degree: d,
            points: n,
        });
    }
    for (i, &a) in points.iter().enumerate() {
        if points[..i].contains(&a) {
            return Err(RingError::DuplicatePoint(a));
        }
    }
    let mut master = DensePoly::one(n);
    for &a in points {
        master.mul_linear_root(f, a % f.q);
    }
    let mut out = Vec::with_capacity(n);
    for &a in points {
        let a = a % f.q;
        let quot = master.div_linear_root(f, a);
        let denom = quot.eval(f, a);
        out.push(f.mul(quot.coeff(d), f.inv(denom)));
    }
    Ok(out)
}

/// Coefficient of `y^d` of the unique polynomial of degree `< evals.len()`
/// through the given (point, value) pairs.
pub fn interpolate_coeff(
    f: &PrimeField,
    evals: &[(u64, u64)],
    d: usize,
) -> Result<u64, RingError> {
    let points: Vec<u64> = evals.iter().map(|&(x, _)| x).collect();
    let w = coeff_weights(f, &points, d)?;
    let mut acc = 0u64;
    for (&(_, v), &wj) in evals.iter().zip(&w) {
        acc = f.add(acc, f.mul(v, wj));
    }
    Ok(acc)
}

/// Coefficient of `y1^d1·y2^d2` from values on the grid
/// `grid[j][l] = f(xs[j], ys[l])`.
pub fn interpolate_coeff_bivar(
    f: &PrimeField,
    xs: &[u64],
    ys: &[u64],
    grid: &[Vec<u64>],
    d: (usize, usize),
) -> Result<u64, RingError> {
    let wx = coeff_weights(f, xs, d.0)?;
    let wy = coeff_weights(f, ys, d.1)?;
    let mut acc = 0u64;
    for (row, &wxj) in grid.iter().zip(&wx) {
        let mut inner = 0u64;
        for (&v, &wyl) in row.iter().zip(&wy) {
            inner = f.add(inner, f.mul(v, wyl));
        }
        acc = f.add(acc, f.mul(inner, wxj));
    }
    Ok(acc)
}

/// Residues of one integer modulo pairwise-distinct primes, plus an absolute
/// bound on that integer.
#[derive(Debug, Clone)]
pub struct CrtLedger {
    pub residues: Vec<(u64, u64)>,
    pub bound: BigInt,
}

/// Reconstructs the unique integer `t` with `|t| ≤ bound` from its residues.
/// Requires the modulus product to exceed `2·bound`.
pub fn crt_reconstruct(ledger: &CrtLedger) -> Result<BigInt, RingError> {
    for (i, &(q, _)) in ledger.residues.iter().enumerate() {
        if ledger.residues[..i].iter().any(|&(p, _)| p == q) {
            return Err(RingError::DuplicatePrime(q));
        }
    }
    let modulus: BigInt = ledger
        .residues
        .iter()
        .map(|&(q, _)| BigInt::from(q))
        .product();
    if modulus <= 2 * &ledger.bound {
        return Err(RingError::InsufficientPrimes);
    }
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(q, r) in &ledger.residues {
        let qb = BigInt::from(q);
        let f = PrimeField {
            q,
            order: 1,
            zeta: 1,
        };
        let x_mod = f.from_bigint(&x);
        let m_mod = f.from_bigint(&m);
        let delta = f.mul(f.sub(r % q, x_mod), f.inv(m_mod));
        x += &m * BigInt::from(delta);
        m *= qb;
    }
    // Move into the symmetric range (-m/2, m/2].
    if &x * 2 > m {
        x -= &m;
    }
    if x.abs() > ledger.bound {
        return Err(RingError::InconsistentResidues);
    }
    Ok(x)
}

/// Binomial coefficient as an exact integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn bigmat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn power_sum_closed_form() {
        assert_eq!(roots_power_sum(3, 3), BigInt::from(3));
        assert_eq!(roots_power_sum(3, 2), BigInt::from(0));
        assert_eq!(roots_power_sum(2, 5), BigInt::from(0));
    }

    #[test]
    fn power_sum_small_orders_exhaustive() {
        for order in 1..=8u64 {
            for i in 0..=40u64 {
                let expect = if i % order == 0 { order } else { 0 };
                assert_eq!(roots_power_sum(order, i), BigInt::from(expect));
            }
        }
    }

    #[test]
    fn exact_det_basics() {
        let id = bigmat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(det_exact(&id), BigInt::one());
        let swap = bigmat(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_exact(&swap), BigInt::from(-1));
        // Laplacian of K4 with one row/column removed: 16 spanning trees.
        let k4 = bigmat(&[&[3, -1, -1], &[-1, 3, -1], &[-1, -1, 3]]);
        assert_eq!(det_exact(&k4), BigInt::from(16));
        assert_eq!(det_exact(&[]), BigInt::one());
        let singular = bigmat(&[&[2, 4], &[1, 2]]);
        assert_eq!(det_exact(&singular), BigInt::zero());
    }

    #[test]
    fn modular_det_matches_examples() {
        let f = PrimeField {
            q: 10007,
            order: 1,
            zeta: 1,
        };
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(det_mod(&f, &id), 1);
        let repeated = vec![vec![3, 4], vec![3, 4]];
        assert_eq!(det_mod(&f, &repeated), 0);
    }

    #[test]
    fn modular_det_agrees_with_exact_reduction() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        let f = PrimeField {
            q: 10007,
            order: 1,
            zeta: 1,
        };
        for _ in 0..500 {
            let n = rng.gen_range(0..=6);
            let ints: Vec<Vec<i64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(-9..=9)).collect())
                .collect();
            let big: Vec<Vec<BigInt>> = ints
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            let modular: Vec<Vec<u64>> = ints
                .iter()
                .map(|r| r.iter().map(|&v| v.rem_euclid(f.q as i64) as u64).collect())
                .collect();
            let expect = f.from_bigint(&det_exact(&big));
            assert_eq!(det_mod(&f, &modular), expect);
        }
    }

    #[test]
    fn interpolation_examples() {
        let f = PrimeField {
            q: 1_000_003,
            order: 1,
            zeta: 1,
        };
        // f(y) = y^2 sampled at 0,1,2
        let sq: Vec<(u64, u64)> = [0u64, 1, 2].iter().map(|&x| (x, f.mul(x, x))).collect();
        assert_eq!(interpolate_coeff(&f, &sq, 2).unwrap(), 1);
        assert_eq!(interpolate_coeff(&f, &sq, 1).unwrap(), 0);
        // f(y) = 3y + 5 sampled at 0,1
        let lin = vec![(0u64, 5u64), (1, 8)];
        assert_eq!(interpolate_coeff(&f, &lin, 0).unwrap(), 5);
        // f(y1,y2) = y1*y2 on a 2x2 grid
        let grid = vec![vec![0, 0], vec![0, 1]];
        assert_eq!(
            interpolate_coeff_bivar(&f, &[0, 1], &[0, 1], &grid, (1, 1)).unwrap(),
            1
        );
        assert_eq!(
            interpolate_coeff(&f, &[(3, 1), (3, 2)], 0),
            Err(RingError::DuplicatePoint(3))
        );
        assert_eq!(
            interpolate_coeff(&f, &lin, 2),
            Err(RingError::NotEnoughPoints {
                degree: 2,
                points: 2
            })
        );
    }

    #[test]
    fn interpolation_recovers_random_coefficients() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        let f = PrimeField {
            q: (1 << 61) - 1,
            order: 1,
            zeta: 1,
        };
        for _ in 0..200 {
            let deg = rng.gen_range(0..=12usize);
            let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..f.q)).collect();
            let points: Vec<u64> = (0..=deg as u64).collect();
            let evals: Vec<(u64, u64)> = points
                .iter()
                .map(|&x| {
                    let mut acc = 0u64;
                    for &c in coeffs.iter().rev() {
                        acc = f.add(f.mul(acc, x), c);
                    }
                    (x, acc)
                })
                .collect();
            let d = rng.gen_range(0..=deg);
            assert_eq!(interpolate_coeff(&f, &evals, d).unwrap(), coeffs[d]);
        }
    }

    #[test]
    fn crt_examples() {
        let ok = CrtLedger {
            residues: vec![(5, 3), (7, 3)],
            bound: BigInt::from(10),
        };
        assert_eq!(crt_reconstruct(&ok).unwrap(), BigInt::from(3));
        let negative = CrtLedger {
            residues: vec![(5, 4), (7, 6)],
            bound: BigInt::from(17),
        };
        assert_eq!(crt_reconstruct(&negative).unwrap(), BigInt::from(-1));
        let short = CrtLedger {
            residues: vec![(5, 3)],
            bound: BigInt::from(10),
        };
        assert_eq!(crt_reconstruct(&short), Err(RingError::InsufficientPrimes));
        let dup = CrtLedger {
            residues: vec![(5, 3), (5, 3), (7, 3)],
            bound: BigInt::from(2),
        };
        assert_eq!(crt_reconstruct(&dup), Err(RingError::DuplicatePrime(5)));
    }

    #[test]
    fn crt_roundtrip_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(4242);
        for _ in 0..200 {
            let bound_mag: u64 = rng.gen_range(1..1_000_000_000);
            let t: i64 = rng.gen_range(-(bound_mag as i64)..=bound_mag as i64);
            let mut primes = Vec::new();
            let mut product = BigInt::one();
            while product <= 2 * BigInt::from(bound_mag) {
                let f = random_prime_with_root(1, 20, &mut rng);
                if primes.iter().any(|&(q, _)| q == f.q) {
                    continue;
                }
                primes.push((f.q, (t.rem_euclid(f.q as i64)) as u64));
                product *= BigInt::from(f.q);
            }
            let ledger = CrtLedger {
                residues: primes,
                bound: BigInt::from(bound_mag),
            };
            assert_eq!(crt_reconstruct(&ledger).unwrap(), BigInt::from(t));
        }
    }

    #[test]
    fn sampled_fields_carry_exact_roots() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for order in [2u64, 3, 4, 5, 6, 8] {
            for _ in 0..5 {
                let f = random_prime_with_root(order, 50, &mut rng);
                assert!(is_prime_u64(f.q));
                assert_eq!((f.q - 1) % order, 0);
                assert!(f.q >= 1 << 49 && f.q < 1 << 50);
                assert_eq!(f.pow(f.zeta, order), 1);
                for d in 1..order {
                    if order % d == 0 {
                        assert_ne!(f.pow(f.zeta, d), 1, "order must be exact");
                    }
                }
            }
        }
        // order 2 always yields zeta = q - 1
        let f = random_prime_with_root(2, 31, &mut rng);
        assert_eq!(f.zeta, f.q - 1);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 3), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(153, 17), {
            let mut acc = BigInt::one();
            for i in 0..17u64 {
                acc = acc * BigInt::from(153 - i) / BigInt::from(i + 1);
            }
            acc
        });
    }
}
