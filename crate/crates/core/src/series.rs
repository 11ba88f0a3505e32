//! Truncated formal power series over exact rationals, and the specific
//! coefficient extractions the counting formulas need: [x^m](e^x-1)^b,
//! the ratio Q(a,b), the cycle factor (1-x)e^x, and the sink/source
//! generating function H(x1,x2,y,z).

use std::collections::BTreeMap;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Hard cap on the number of potential terms in one series.
pub const TERM_BUDGET: usize = 10_000_000;

pub fn factorial(k: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 2..=k {
        f *= BigUint::from(i);
    }
    f
}

/// Falling factorial (x)_k = x(x-1)...(x-k+1) for integer x >= 0.
pub fn falling(x: usize, k: usize) -> BigUint {
    let mut f = BigUint::one();
    for i in 0..k {
        f *= BigUint::from(x - i);
    }
    f
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    falling(n, k) / factorial(k)
}

// Stirling numbers of the second kind, computed row by row with
// S(m,b) = b*S(m-1,b) + S(m-1,b-1) and kept for the whole process.
static STIRLING: Mutex<Vec<Vec<BigUint>>> = Mutex::new(Vec::new());

pub fn stirling2(m: usize, b: usize) -> BigUint {
    if b > m {
        return BigUint::zero();
    }
    let mut table = STIRLING.lock().unwrap();
    if table.is_empty() {
        table.push(vec![BigUint::one()]);
    }
    while table.len() <= m {
        let prev = table.last().unwrap().clone();
        let mm = table.len();
        let mut row = vec![BigUint::zero(); mm + 1];
        for bb in 1..=mm {
            let mut v = prev.get(bb).cloned().unwrap_or_default();
            v *= BigUint::from(bb);
            v += prev.get(bb - 1).cloned().unwrap_or_default();
            row[bb] = v;
        }
        table.push(row);
    }
    table[m][b].clone()
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// [x^m] (e^x - 1)^b = b! S(m,b) / m!.
pub fn egf_coeff(m: usize, b: usize) -> BigRational {
    if b > m {
        return BigRational::zero();
    }
    ratio(factorial(b) * stirling2(m, b), factorial(m))
}

/// Q(a,b) = [x^{m-a}](e^x-1)^{n-b} / [x^m](e^x-1)^n.
pub fn q_ratio(a: usize, b: usize, n: usize, m: usize) -> Result<BigRational> {
    if m < n {
        return Err(Error::InvalidRegime(format!(
            "Q({a},{b}) needs m >= n, got n = {n}, m = {m}"
        )));
    }
    if a > m || b > n {
        return Err(Error::InvalidRegime(format!(
            "Q({a},{b}) out of range for n = {n}, m = {m}"
        )));
    }
    Ok(egf_coeff(m - a, n - b) / egf_coeff(m, n))
}

/// [x^a] (1-x)e^x = 1/a! - 1/(a-1)! for a >= 1, and 1 for a = 0.
pub fn cycle_egf_coeff(a: usize) -> BigRational {
    if a == 0 {
        return BigRational::one();
    }
    ratio(BigUint::one(), factorial(a)) - ratio(BigUint::one(), factorial(a - 1))
}

/// Sparse truncated power series in 1 to 4 variables.
///
/// `orders[v]` is an exclusive bound: exponents of variable `v` run over
/// `0..orders[v]` and everything at or above the bound is discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    orders: Vec<usize>,
    coeffs: BTreeMap<Vec<u16>, BigRational>,
}

impl TruncSeries {
    pub fn new(orders: &[usize]) -> Result<Self> {
        if orders.is_empty() || orders.len() > 4 {
            return Err(Error::InvalidRegime(format!(
                "series supports 1..=4 variables, got {}",
                orders.len()
            )));
        }
        let terms: usize = orders.iter().product();
        if orders.iter().any(|&o| o == 0) || terms > TERM_BUDGET {
            return Err(Error::TruncationBudget {
                terms,
                limit: TERM_BUDGET,
            });
        }
        Ok(Self {
            orders: orders.to_vec(),
            coeffs: BTreeMap::new(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn constant(orders: &[usize], c: BigRational) -> Result<Self> {
        let mut s = Self::new(orders)?;
        s.add_term(vec![0; orders.len()], c);
        Ok(s)
    }

    pub fn one(orders: &[usize]) -> Result<Self> {
        Self::constant(orders, BigRational::one())
    }

    /// The monomial c * v_i.
    pub fn monomial(orders: &[usize], var: usize, c: BigRational) -> Result<Self> {
        let mut s = Self::new(orders)?;
        let mut e = vec![0u16; orders.len()];
        e[var] = 1;
        s.add_term(e, c);
        Ok(s)
    }

    /// e^{v} truncated, as a series in the full variable set.
    pub fn exp_var(orders: &[usize], var: usize) -> Result<Self> {
        let mut s = Self::new(orders)?;
        for k in 0..orders[var] {
            let mut e = vec![0u16; orders.len()];
            e[var] = k as u16;
            s.add_term(e, ratio(BigUint::one(), factorial(k)));
        }
        Ok(s)
    }

    fn add_term(&mut self, expo: Vec<u16>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        if expo
            .iter()
            .zip(&self.orders)
            .any(|(&e, &o)| e as usize >= o)
        {
            return;
        }
        let entry = self
            .coeffs
            .entry(expo.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        // keep the map clean so is_zero and eq work structurally
        if entry.is_zero() {
            self.coeffs.remove(&expo);
        }
    }

    pub fn coeff(&self, expo: &[u16]) -> BigRational {
        self.coeffs.get(expo).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0u16; self.orders.len()])
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.orders, other.orders);
        let mut out = self.clone();
        for (e, c) in &other.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self {
            orders: self.orders.clone(),
            coeffs: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.coeffs {
            out.coeffs.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.orders, other.orders);
        let mut out = Self {
            orders: self.orders.clone(),
            coeffs: BTreeMap::new(),
        };
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let mut e = ea.clone();
                let mut fits = true;
                for (i, x) in e.iter_mut().enumerate() {
                    *x += eb[i];
                    if *x as usize >= self.orders[i] {
                        fits = false;
                        break;
                    }
                }
                if fits {
                    out.add_term(e, ca * cb);
                }
            }
        }
        out
    }

    fn min_total_degree(&self) -> Option<usize> {
        self.coeffs
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .min()
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Self {
        assert!(self.constant_term().is_zero(), "exp needs zero constant term");
        let max_deg: usize = self.orders.iter().map(|&o| o - 1).sum();
        let mut out = Self::one(&self.orders).unwrap();
        let mut power = Self::one(&self.orders).unwrap();
        for k in 1..=max_deg {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            if power.min_total_degree().unwrap_or(usize::MAX) > max_deg {
                break;
            }
            out = out.add(&power.scale(&ratio(BigUint::one(), factorial(k))));
        }
        out
    }

    /// log of a series with constant term 1.
    pub fn log(&self) -> Self {
        assert!(
            self.constant_term().is_one(),
            "log needs constant term 1"
        );
        let f = self.sub(&Self::one(&self.orders).unwrap());
        let max_deg: usize = self.orders.iter().map(|&o| o - 1).sum();
        let mut out = Self::new(&self.orders).unwrap();
        let mut power = Self::one(&self.orders).unwrap();
        for k in 1..=max_deg {
            power = power.mul(&f);
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            out = out.add(&power.scale(&(sign / BigRational::from(BigInt::from(k)))));
        }
        out
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn recip(&self) -> Self {
        let c = self.constant_term();
        assert!(!c.is_zero(), "recip needs nonzero constant term");
        let inv_c = BigRational::one() / c;
        // self = c (1 + f), 1/self = (1/c) sum (-f)^k
        let f = self.scale(&inv_c).sub(&Self::one(&self.orders).unwrap());
        let max_deg: usize = self.orders.iter().map(|&o| o - 1).sum();
        let mut out = Self::one(&self.orders).unwrap();
        let mut power = Self::one(&self.orders).unwrap();
        for _ in 1..=max_deg {
            power = power.mul(&f).scale(&-BigRational::one());
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        out.scale(&inv_c)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one(&self.orders).unwrap();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Fix variable `var` to exponent `e`, dropping it from the series.
    pub fn slice(&self, var: usize, e: u16) -> Self {
        let mut orders = self.orders.clone();
        orders.remove(var);
        let mut out = Self {
            orders,
            coeffs: BTreeMap::new(),
        };
        for (expo, c) in &self.coeffs {
            if expo[var] == e {
                let mut rest = expo.clone();
                rest.remove(var);
                out.add_term(rest, c.clone());
            }
        }
        out
    }

    /// Substitute 1 for every variable: the plain sum of all coefficients.
    pub fn eval_at_one(&self) -> BigRational {
        let mut s = BigRational::zero();
        for c in self.coeffs.values() {
            s += c;
        }
        s
    }
}

/// H(x1,x2,y,z) = (1-yz)/(1-y) * prod_i (1 - y e^{x_i}) / (1 - y z e^{x_i}),
/// truncated to the given orders. Variable layout: [x1, x2, y, z].
pub fn sink_source_h(x_orders: [usize; 2], y_order: usize, z_order: usize) -> Result<TruncSeries> {
    let orders = [x_orders[0], x_orders[1], y_order, z_order];
    let one = TruncSeries::one(&orders)?;
    let y = TruncSeries::monomial(&orders, 2, BigRational::one())?;
    let z = TruncSeries::monomial(&orders, 3, BigRational::one())?;
    let yz = y.mul(&z);
    let mut h = one.sub(&yz).mul(&one.sub(&y).recip());
    for xv in 0..2 {
        let ex = TruncSeries::exp_var(&orders, xv)?;
        let yex = y.mul(&ex);
        h = h.mul(&one.sub(&yex)).mul(&one.sub(&yz.mul(&ex)).recip());
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn egf_coeff_small_cases() {
        assert_eq!(egf_coeff(4, 3), r(3, 2));
        assert_eq!(egf_coeff(3, 3), r(1, 1));
        assert_eq!(egf_coeff(2, 3), r(0, 1));
    }

    #[test]
    fn surjection_counts_are_integers() {
        for m in 0..=60usize {
            for n in 0..=m {
                let v = egf_coeff(m, n) * ratio(factorial(m), BigUint::one());
                assert!(v.is_integer(), "m={m} n={n}");
                assert!(!v.is_negative());
            }
        }
    }

    #[test]
    fn q_ratio_examples() {
        assert_eq!(q_ratio(1, 1, 3, 4).unwrap(), r(2, 3));
        assert_eq!(q_ratio(1, 0, 3, 4).unwrap(), r(2, 3));
        assert_eq!(q_ratio(0, 0, 7, 11).unwrap(), r(1, 1));
        assert!(q_ratio(1, 1, 5, 4).is_err());
    }

    #[test]
    fn q_sum_identity() {
        // Q(1,1) + Q(1,0) = m/n for all 2 <= n < m <= 40
        for n in 2..=39usize {
            for m in (n + 1)..=40 {
                let s = q_ratio(1, 1, n, m).unwrap() + q_ratio(1, 0, n, m).unwrap();
                assert_eq!(s, r(m as i64, n as i64), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn cycle_egf_examples() {
        assert_eq!(cycle_egf_coeff(0), r(1, 1));
        assert_eq!(cycle_egf_coeff(1), r(0, 1));
        assert_eq!(cycle_egf_coeff(2), r(-1, 2));
        assert_eq!(cycle_egf_coeff(3), r(-1, 3));
    }

    #[test]
    fn mul_is_associative() {
        let orders = [5, 4];
        let f = TruncSeries::exp_var(&orders, 0).unwrap();
        let g = TruncSeries::one(&orders)
            .unwrap()
            .add(&TruncSeries::monomial(&orders, 1, r(3, 7)).unwrap());
        let h = TruncSeries::monomial(&orders, 0, r(-2, 5))
            .unwrap()
            .add(&TruncSeries::monomial(&orders, 1, r(1, 2)).unwrap());
        assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
    }

    #[test]
    fn exp_log_round_trip() {
        let orders = [6, 5];
        let f = TruncSeries::monomial(&orders, 0, r(2, 3))
            .unwrap()
            .add(&TruncSeries::monomial(&orders, 1, r(-1, 4)).unwrap());
        let g = TruncSeries::one(&orders).unwrap().add(&f);
        assert_eq!(g.log().exp(), g);
        assert_eq!(
            f.exp().mul(&f.scale(&-BigRational::one()).exp()),
            TruncSeries::one(&orders).unwrap()
        );
    }

    #[test]
    fn recip_inverts() {
        let orders = [6];
        let one = TruncSeries::one(&orders).unwrap();
        let f = one.add(&TruncSeries::monomial(&orders, 0, r(-1, 1)).unwrap().scale(&r(1, 2)));
        assert_eq!(f.mul(&f.recip()), one);
    }

    #[test]
    fn h_at_z_equals_one_is_one() {
        // summing over all z powers realizes the substitution z = 1
        let h = sink_source_h([5, 5], 6, 7).unwrap();
        let mut collapsed = TruncSeries::new(&[5, 5, 6]).unwrap();
        for zp in 0..7u16 {
            collapsed = collapsed.add(&h.slice(3, zp));
        }
        // z truncation cuts the tail, so only coefficients with y-degree
        // below the z order are fully resolved; those must match 1
        let one = TruncSeries::one(&[5, 5, 6]).unwrap();
        for (e, c) in collapsed.terms() {
            if (e[2] as usize) < 7 {
                assert_eq!(c, &one.coeff(e), "exponent {e:?}");
            }
        }
        assert_eq!(collapsed.constant_term(), r(1, 1));
    }

    #[test]
    fn h_y0_slice_is_one() {
        let h = sink_source_h([4, 4], 5, 5).unwrap();
        let s = h.slice(2, 0); // [y^0], leaves vars (x1, x2, z)
        assert_eq!(s, TruncSeries::one(&[4, 4, 5]).unwrap());
    }

    #[test]
    fn h_z0_slice_y_coefficients() {
        // [y^a] of (1-y)^{-1} (1-y e^{x1})(1-y e^{x2}) is
        // (e^{x1}-1)(e^{x2}-1) for every a >= 2
        let orders = [6usize, 6, 5];
        let one = TruncSeries::one(&orders).unwrap();
        let y = TruncSeries::monomial(&orders, 2, r(1, 1)).unwrap();
        let mut f = one.sub(&y).recip();
        for xv in 0..2 {
            let ex = TruncSeries::exp_var(&orders, xv).unwrap();
            f = f.mul(&one.sub(&y.mul(&ex)));
        }
        let e1 = TruncSeries::exp_var(&[6, 6], 0)
            .unwrap()
            .sub(&TruncSeries::one(&[6, 6]).unwrap());
        let e2 = TruncSeries::exp_var(&[6, 6], 1)
            .unwrap()
            .sub(&TruncSeries::one(&[6, 6]).unwrap());
        let want = e1.mul(&e2);
        for a in 2..5u16 {
            assert_eq!(f.slice(2, a), want, "a = {a}");
        }
    }

    #[test]
    fn budget_and_var_count_guards() {
        assert!(TruncSeries::new(&[]).is_err());
        assert!(TruncSeries::new(&[2, 2, 2, 2, 2]).is_err());
        assert!(TruncSeries::new(&[100_000, 1000]).is_err());
    }
}
