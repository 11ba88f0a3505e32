//! Exact counting: brute-force oracles on up to five vertices, the
//! inclusion-exclusion count of degree-constrained digraphs, exact fudge
//! factors, and the exact no-isolated-cycle and no-simple-sink/source
//! probabilities.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{self, DegreeSequencePair, Digraph};
use crate::series::{self, cycle_egf_coeff, factorial, falling, q_ratio, TruncSeries};

/// Brute-force operations refuse more vertices than this.
pub const MAX_BRUTE_N: usize = 5;
/// Inclusion-exclusion counts refuse more vertices than this.
pub const MAX_IE_N: usize = 500;
/// pgf_x_mg_exact and the exhaustive oracles stay at desk scale.
pub const MAX_PGF_N: usize = 6;
pub const MAX_PGF_M: usize = 8;
/// Cap on (n^2)^m for the exhaustive insertion-sequence oracles.
pub const MAX_ORACLE_SEQS: u64 = 30_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Brute,
    InclusionExclusion,
    Series,
}

/// A count or probability together with how and for which parameters it
/// was obtained.
#[derive(Debug, Clone)]
pub struct CountResult {
    pub value: BigRational,
    pub method: Method,
    pub n1: usize,
    pub n: usize,
    pub m: usize,
}

fn guard(op: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::SizeGuard { op, n, limit });
    }
    Ok(())
}

/// Visit every simple digraph on [n] with exactly m arcs.
fn for_each_digraph(n: usize, m: usize, mut f: impl FnMut(&[(usize, usize)])) {
    let arcs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let k = arcs.len();
    if m > k {
        return;
    }
    // lexicographic m-combinations of arc indices
    let mut idx: Vec<usize> = (0..m).collect();
    let mut chosen = Vec::with_capacity(m);
    loop {
        chosen.clear();
        chosen.extend(idx.iter().map(|&i| arcs[i]));
        f(&chosen);
        // advance
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + k - m {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn degrees(n: usize, arcs: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let mut ind = vec![0; n];
    let mut outd = vec![0; n];
    for &(i, j) in arcs {
        outd[i] += 1;
        ind[j] += 1;
    }
    (ind, outd)
}

fn min_degrees_ok(n: usize, arcs: &[(usize, usize)]) -> bool {
    let (ind, outd) = degrees(n, arcs);
    ind.iter().all(|&d| d >= 1) && outd.iter().all(|&d| d >= 1)
}

/// Number of strongly connected simple digraphs on [n] with m arcs.
pub fn g_brute(n: usize, m: usize) -> Result<BigUint> {
    guard("g_brute", n, MAX_BRUTE_N)?;
    let mut count = 0u64;
    for_each_digraph(n, m, |arcs| {
        if min_degrees_ok(n, arcs) {
            let g = Digraph::new(n, arcs.to_vec()).unwrap();
            if graph::is_strongly_connected(&g) {
                count += 1;
            }
        }
    });
    Ok(BigUint::from(count))
}

/// Number of simple digraphs on [n] with m arcs and all in/out-degrees >= 1.
pub fn c11_brute(n: usize, m: usize) -> Result<BigUint> {
    guard("c11_brute", n, MAX_BRUTE_N)?;
    let mut count = 0u64;
    for_each_digraph(n, m, |arcs| {
        if min_degrees_ok(n, arcs) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Like [`c11_brute`] but additionally without isolated cycles.
pub fn c110_brute(n: usize, m: usize) -> Result<BigUint> {
    guard("c110_brute", n, MAX_BRUTE_N)?;
    let mut count = 0u64;
    for_each_digraph(n, m, |arcs| {
        if min_degrees_ok(n, arcs) {
            let g = Digraph::new(n, arcs.to_vec()).unwrap();
            if !graph::has_isolated_cycle(&g) {
                count += 1;
            }
        }
    });
    Ok(BigUint::from(count))
}

/// Brute-force count with in-degrees >= 1 on [n] and out-degrees >= 1 on
/// [n1], zero beyond (arcs have tails in [n1] only). Oracle for c11_ie.
pub fn c11_brute_general(n1: usize, n: usize, m: usize) -> Result<BigUint> {
    guard("c11_brute_general", n, MAX_BRUTE_N)?;
    let arcs: Vec<(usize, usize)> = (0..n1)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut count = 0u64;
    combinations(arcs.len(), m, |pick| {
        let chosen: Vec<_> = pick.iter().map(|&i| arcs[i]).collect();
        let (ind, outd) = degrees(n, &chosen);
        if ind.iter().all(|&d| d >= 1) && outd[..n1].iter().all(|&d| d >= 1) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

fn combinations(k: usize, m: usize, mut f: impl FnMut(&[usize])) {
    if m > k {
        return;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        f(&idx);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + k - m {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn pascal(rows: usize) -> Vec<Vec<BigUint>> {
    let mut t: Vec<Vec<BigUint>> = Vec::with_capacity(rows + 1);
    t.push(vec![BigUint::one()]);
    for r in 1..=rows {
        let prev = &t[r - 1];
        let mut row = vec![BigUint::one(); r + 1];
        for c in 1..r {
            row[c] = &prev[c - 1] + &prev[c];
        }
        t.push(row);
    }
    t
}

/// C_{1,1}(n1, n, m): simple digraphs on [n], arcs with tails in [n1],
/// all in-degrees >= 1 and out-degrees >= 1 exactly on [n1].
///
/// Inclusion-exclusion over A = in-degree-zero vertices (a1 inside [n1],
/// a2 outside) and B = out-degree-zero vertices, with c = |A cap B|;
/// the surviving arc slots number (n1-|B|)(n-|A|) - |[n1] \ (A u B)|,
/// the subtraction being the loop exclusion.
pub fn c11_ie(n1: usize, n: usize, m: usize) -> Result<BigUint> {
    guard("c11_ie", n, MAX_IE_N)?;
    if n1 > n {
        return Err(Error::InvalidRegime(format!("n1 = {n1} > n = {n}")));
    }
    let nmax = if n > 0 { n1 * (n - 1) } else { 0 };
    if m > nmax {
        return Ok(BigUint::zero());
    }
    // C(N, m) for all N up to nmax, built incrementally
    let mut table = vec![BigUint::zero(); nmax + 1];
    table[m] = BigUint::one();
    for nn in m + 1..=nmax {
        table[nn] = &table[nn - 1] * BigUint::from(nn) / BigUint::from(nn - m);
    }
    let tri = pascal(n1.max(n - n1));
    let mut total = BigInt::zero();
    for a1 in 0..=n1 {
        for a2 in 0..=(n - n1) {
            if a1 + a2 > n {
                break;
            }
            for b in 0..=n1 {
                let base = (n1 - b) * (n - a1 - a2);
                if base < m {
                    break; // shrinks as b grows
                }
                let c_lo = (a1 + b).saturating_sub(n1);
                for c in c_lo..=a1.min(b) {
                    let d = n1 + c - b - a1;
                    let slots = base - d;
                    if slots < m {
                        continue;
                    }
                    let w = &tri[n1][a1]
                        * &tri[a1][c]
                        * &tri[n1 - a1][b - c]
                        * &tri[n - n1][a2]
                        * &table[slots];
                    if (a1 + a2 + b) % 2 == 1 {
                        total -= BigInt::from(w);
                    } else {
                        total += BigInt::from(w);
                    }
                }
            }
        }
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::InvalidRegime("inclusion-exclusion went negative".into()))
}

/// h_{1,1}(n,m) = (n! S(m,n))^2: insertion sequences with all in- and
/// out-degrees positive.
pub fn h11_exact(n: usize, m: usize) -> BigUint {
    let s = factorial(n) * series::stirling2(m, n);
    &s * &s
}

/// Multinomial coefficient m!/prod(mu_i!) for the multiplicities `mu`.
pub fn multiseq_count(mu: &[usize]) -> BigUint {
    let m: usize = mu.iter().sum();
    let mut v = factorial(m);
    for &c in mu {
        v /= factorial(c);
    }
    v
}

/// binom(m; delta) * binom(m; Delta).
pub fn h_by_degrees(dsp: &DegreeSequencePair) -> BigUint {
    multiseq_count(&dsp.in_degrees) * multiseq_count(&dsp.out_degrees)
}

/// Count of simple digraphs realizing exactly these degrees.
pub fn g_by_degrees_brute(dsp: &DegreeSequencePair) -> Result<BigUint> {
    let n = dsp.n();
    guard("g_by_degrees_brute", n, MAX_BRUTE_N)?;
    let m = dsp.m();
    let mut count = 0u64;
    for_each_digraph(n, m, |arcs| {
        let (ind, outd) = degrees(n, arcs);
        if ind == dsp.in_degrees && outd == dsp.out_degrees {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// F(delta, Delta) = g(delta, Delta) * prod delta_i! Delta_i! / m!, the
/// probability that a uniform stub bijection induces a simple digraph.
pub fn fudge_exact(dsp: &DegreeSequencePair) -> Result<BigRational> {
    let m = dsp.m();
    let g = g_by_degrees_brute(dsp)?;
    let mut num = BigInt::from(g);
    for &d in dsp.in_degrees.iter().chain(&dsp.out_degrees) {
        num *= BigInt::from(factorial(d));
    }
    Ok(BigRational::new(num, BigInt::from(factorial(m))))
}

/// E[F] = m! C_{1,1}(n,m) / h_{1,1}(n,m).
pub fn mean_fudge_exact(n: usize, m: usize) -> Result<BigRational> {
    let c = c11_ie(n, n, m)?;
    Ok(BigRational::new(
        BigInt::from(factorial(m) * c),
        BigInt::from(h11_exact(n, m)),
    ))
}

/// P(no isolated cycle) for the uniform digraph with in-degrees >= 1 on
/// [n] and out-degrees >= 1 on [n1], by the inversion formula: sum over
/// a of (n1)_a [x^a]((1-x)e^x) C_{1,1}(n1-a, n-a, m-a) / C_{1,1}(n1,n,m),
/// with a running through 0..=n1 inclusive.
pub fn p_no_isolated_cycle_exact(n1: usize, n: usize, m: usize) -> Result<BigRational> {
    let c = c11_ie(n1, n, m)?;
    if c.is_zero() {
        return Err(Error::InvalidRegime(format!(
            "C_11({n1},{n},{m}) = 0, probability undefined"
        )));
    }
    let mut s = BigRational::zero();
    for a in 0..=n1.min(m) {
        let h = cycle_egf_coeff(a);
        if h.is_zero() {
            continue;
        }
        let ca = c11_ie(n1 - a, n - a, m - a)?;
        if ca.is_zero() {
            continue;
        }
        let w = BigRational::new(BigInt::from(falling(n1, a) * ca), BigInt::from(c.clone()));
        s += w * h;
    }
    Ok(s)
}

/// P(X=0) for the insertion-sequence multi-digraph: no simple sink-set
/// and no simple source-set. Evaluates
/// 1 + sum_{a=1}^{min(n,m)} (n)_a/(m)_a Q(a,a-1)^2 - (n/m)(Q(1,1)+Q(1,0))^2,
/// the a-sum running through a = n inclusive.
pub fn p_no_simple_ss_mg_exact(n: usize, m: usize) -> Result<BigRational> {
    if m <= n || n < 2 {
        return Err(Error::InvalidRegime(format!(
            "need m > n >= 2, got n = {n}, m = {m}"
        )));
    }
    guard("p_no_simple_ss_mg_exact", n, MAX_IE_N)?;
    let mut s = BigRational::one();
    for a in 1..=n.min(m) {
        let q = q_ratio(a, a - 1, n, m)?;
        let w = BigRational::new(BigInt::from(falling(n, a)), BigInt::from(falling(m, a)));
        s += w * &q * &q;
    }
    let q_sum = q_ratio(1, 1, n, m)? + q_ratio(1, 0, n, m)?;
    s -= BigRational::new(BigInt::from(n), BigInt::from(m)) * &q_sum * &q_sum;
    Ok(s)
}

/// Exact probability generating function of X, the number of vertices on
/// cycles of simple sink/source-sets, for the multi-digraph model.
/// Returns a univariate series in z truncated at `z_order`.
pub fn pgf_x_mg_exact(n: usize, m: usize, z_order: usize) -> Result<TruncSeries> {
    guard("pgf_x_mg_exact", n, MAX_PGF_N)?;
    guard("pgf_x_mg_exact", m, MAX_PGF_M)?;
    let mut out = TruncSeries::new(&[z_order])?;
    let m_fact_sq = {
        let f = factorial(m);
        BigRational::from(BigInt::from(&f * &f))
    };
    let h11 = BigRational::from(BigInt::from(h11_exact(n, m)));
    for a in 0..=n.min(m) {
        // vars [x, y, z]; we need [x^{m-a} y^a]
        let orders = [m - a + 1, a + 2, z_order];
        let one = TruncSeries::one(&orders)?;
        let y = TruncSeries::monomial(&orders, 1, BigRational::one())?;
        let z = TruncSeries::monomial(&orders, 2, BigRational::one())?;
        let ex = TruncSeries::exp_var(&orders, 0)?;
        let b = one
            .sub(&y.mul(&ex))
            .mul(&one.sub(&y.mul(&z).mul(&ex)).recip())
            .mul(&ex.sub(&one).pow(n - a));
        let a_slice = b.slice(0, (m - a) as u16); // vars (y, z)
        let yz_orders = [a + 2, z_order];
        let one2 = TruncSeries::one(&yz_orders)?;
        let y2 = TruncSeries::monomial(&yz_orders, 0, BigRational::one())?;
        let z2 = TruncSeries::monomial(&yz_orders, 1, BigRational::one())?;
        let full = one2
            .sub(&y2.mul(&z2))
            .mul(&one2.sub(&y2).recip())
            .mul(&a_slice)
            .mul(&a_slice);
        let za = full.slice(0, a as u16); // series in z alone
        let w = BigRational::new(BigInt::from(falling(n, a)), BigInt::from(falling(m, a)));
        out = out.add(&za.scale(&w));
    }
    Ok(out.scale(&(m_fact_sq / h11)))
}

/// Outcome of an exhaustive insertion-sequence enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// P(no simple sink/source set) over valid sequences.
    pub p_no_simple_ss: BigRational,
    /// Distribution of X (vertices on simple sink/source cycles).
    pub x_counts: Vec<u64>,
    pub good: u64,
    pub total: u64,
}

/// Enumerate all (n^2)^m insertion sequences as base-n^2 numbers, keep
/// those with all in/out-degrees positive, and tally the simple
/// sink/source structure of each resulting multi-digraph.
pub fn mg_oracle(n: usize, m: usize) -> Result<OracleResult> {
    let base = (n * n) as u64;
    let seqs = base.checked_pow(m as u32).filter(|&s| s <= MAX_ORACLE_SEQS);
    let Some(seqs) = seqs else {
        return Err(Error::SizeGuard {
            op: "mg_oracle",
            n: n * n * m,
            limit: MAX_ORACLE_SEQS as usize,
        });
    };
    let mut total = 0u64;
    let mut good = 0u64;
    let mut x_counts = vec![0u64; 2 * n + 1];
    let mut arcs = Vec::with_capacity(m);
    for code in 0..seqs {
        arcs.clear();
        let mut rest = code;
        let mut ind = [0usize; 8];
        let mut outd = [0usize; 8];
        for _ in 0..m {
            let arc = (rest % base) as usize;
            rest /= base;
            let (i, j) = (arc / n, arc % n);
            arcs.push((i, j));
            outd[i] += 1;
            ind[j] += 1;
        }
        if ind[..n].iter().any(|&d| d < 1) || outd[..n].iter().any(|&d| d < 1) {
            continue;
        }
        total += 1;
        let sinks = graph::find_simple_sink_sets(n, &arcs);
        let sources = graph::find_simple_source_sets(n, &arcs);
        if sinks.is_empty() && sources.is_empty() {
            good += 1;
        }
        let mut on_cycle = [false; 8];
        for set in sinks.iter().chain(sources.iter()) {
            for &v in set {
                on_cycle[v] = true;
            }
        }
        let x = on_cycle[..n].iter().filter(|&&b| b).count();
        x_counts[x] += 1;
    }
    Ok(OracleResult {
        p_no_simple_ss: BigRational::new(BigInt::from(good), BigInt::from(total)),
        x_counts,
        good,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::MultiDigraph;

    fn int(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn g_brute_examples() {
        assert_eq!(g_brute(3, 3).unwrap(), int(2));
        assert_eq!(g_brute(4, 4).unwrap(), int(6));
        assert_eq!(g_brute(3, 4).unwrap(), int(9));
    }

    #[test]
    fn c11_brute_examples() {
        assert_eq!(c11_brute(3, 3).unwrap(), int(2));
        assert_eq!(c11_brute(3, 4).unwrap(), int(9));
        assert_eq!(c110_brute(3, 3).unwrap(), int(0));
    }

    #[test]
    fn all_min_degree_digraphs_on_3_vertices_4_arcs_are_sc() {
        let mut checked = 0;
        for_each_digraph(3, 4, |arcs| {
            if min_degrees_ok(3, arcs) {
                let g = Digraph::new(3, arcs.to_vec()).unwrap();
                assert!(graph::is_strongly_connected(&g));
                checked += 1;
            }
        });
        assert_eq!(checked, 9);
    }

    #[test]
    fn c11_ie_matches_brute_through_n4() {
        for n in 1..=4usize {
            for m in 0..=n * (n - 1) {
                assert_eq!(
                    c11_ie(n, n, m).unwrap(),
                    c11_brute(n, m).unwrap(),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn c11_ie_matches_general_brute() {
        for &(n1, n, m) in &[(1, 2, 2), (2, 3, 3), (2, 3, 4), (3, 4, 5), (2, 4, 4), (3, 4, 4)] {
            assert_eq!(
                c11_ie(n1, n, m).unwrap(),
                c11_brute_general(n1, n, m).unwrap(),
                "({n1},{n},{m})"
            );
        }
    }

    #[test]
    fn c11_ie_complete_digraph() {
        for n in 2..=6usize {
            assert_eq!(c11_ie(n, n, n * (n - 1)).unwrap(), int(1));
        }
    }

    #[test]
    fn h11_examples() {
        assert_eq!(h11_exact(3, 4), int(1296));
        for n in 1..=5usize {
            let f = factorial(n);
            assert_eq!(h11_exact(n, n), &f * &f);
        }
    }

    #[test]
    fn h11_matches_exhaustive_insertion_sequences() {
        // all 9^4 sequences on n=3, m=4, filtered by positive degrees
        let (n, m) = (3usize, 4usize);
        let mut count = 0u64;
        for code in 0..(n * n).pow(m as u32) {
            let mut rest = code;
            let mut ind = [0; 3];
            let mut outd = [0; 3];
            for _ in 0..m {
                let arc = rest % (n * n);
                rest /= n * n;
                outd[arc / n] += 1;
                ind[arc % n] += 1;
            }
            if ind.iter().all(|&d| d >= 1) && outd.iter().all(|&d| d >= 1) {
                count += 1;
            }
        }
        assert_eq!(h11_exact(3, 4), int(count));
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multiseq_count(&[4]), int(1));
        let dsp = DegreeSequencePair::new(vec![1, 1, 2], vec![2, 1, 1]).unwrap();
        assert_eq!(h_by_degrees(&dsp), int(144));
    }

    #[test]
    fn multiseq_sums_to_h_by_degrees() {
        // over all 2x2 multiplicity matrices with given margins, n=2
        for m in 2..=4usize {
            for d1 in 1..m {
                let delta = [d1, m - d1];
                for t1 in 1..m {
                    let ddelta = [t1, m - t1];
                    let mut sum = BigUint::zero();
                    // mu[i][j]: arcs i->j including loops; rows sum to out,
                    // cols to in
                    for m00 in 0..=ddelta[0].min(delta[0]) {
                        let m01 = ddelta[0] - m00;
                        if m01 > delta[1] {
                            continue;
                        }
                        let m10 = delta[0] - m00;
                        if m10 > ddelta[1] {
                            continue;
                        }
                        let m11 = ddelta[1] - m10;
                        if m10 + m11 != ddelta[1] || m01 + m11 != delta[1] {
                            continue;
                        }
                        sum += multiseq_count(&[m00, m01, m10, m11]);
                    }
                    let dsp =
                        DegreeSequencePair::new(delta.to_vec(), ddelta.to_vec()).unwrap();
                    assert_eq!(sum, h_by_degrees(&dsp), "m={m} {delta:?} {ddelta:?}");
                }
            }
        }
    }

    #[test]
    fn fudge_exact_examples() {
        let dsp = DegreeSequencePair::new(vec![1, 1, 2], vec![2, 1, 1]).unwrap();
        assert_eq!(fudge_exact(&dsp).unwrap(), r(1, 6));
        let dsp2 = DegreeSequencePair::new(vec![1, 1], vec![1, 1]).unwrap();
        assert_eq!(fudge_exact(&dsp2).unwrap(), r(1, 2));
        let heavy = DegreeSequencePair::new(vec![3, 0, 0], vec![1, 1, 1]).unwrap();
        assert_eq!(fudge_exact(&heavy).unwrap(), r(0, 1));
    }

    #[test]
    fn mean_fudge_examples() {
        assert_eq!(mean_fudge_exact(3, 4).unwrap(), r(1, 6));
        assert_eq!(mean_fudge_exact(3, 3).unwrap(), r(1, 3));
        assert_eq!(mean_fudge_exact(2, 2).unwrap(), r(1, 2));
        for n in 2..=4usize {
            for m in n..=(n * (n - 1)) {
                let f = mean_fudge_exact(n, m).unwrap();
                assert!(f <= BigRational::one(), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn p_no_isolated_cycle_small_cases() {
        assert_eq!(p_no_isolated_cycle_exact(3, 3, 3).unwrap(), r(0, 1));
        let want34 = BigRational::new(
            BigInt::from(c110_brute(3, 4).unwrap()),
            BigInt::from(c11_brute(3, 4).unwrap()),
        );
        assert_eq!(p_no_isolated_cycle_exact(3, 3, 4).unwrap(), want34);
        let want45 = BigRational::new(
            BigInt::from(c110_brute(4, 5).unwrap()),
            BigInt::from(c11_brute(4, 5).unwrap()),
        );
        assert_eq!(p_no_isolated_cycle_exact(4, 4, 5).unwrap(), want45);
    }

    #[test]
    fn p_no_simple_ss_mg_matches_oracle_3_4() {
        let oracle = mg_oracle(3, 4).unwrap();
        assert_eq!(oracle.p_no_simple_ss, r(1, 3));
        assert_eq!(p_no_simple_ss_mg_exact(3, 4).unwrap(), r(1, 3));
    }

    #[test]
    fn p_no_simple_ss_mg_matches_oracle_2_3() {
        let oracle = mg_oracle(2, 3).unwrap();
        assert_eq!(p_no_simple_ss_mg_exact(2, 3).unwrap(), oracle.p_no_simple_ss);
    }

    #[test]
    fn mg_oracle_degenerate_2_2() {
        // m = n forces disjoint cycle unions, every one has a simple set
        let base = 4u64;
        let mut total = 0;
        let mut good = 0;
        for code in 0..base * base {
            let arcs: Vec<(usize, usize)> = [(code % 4) as usize, (code / 4 % 4) as usize]
                .iter()
                .map(|&a| (a / 2, a % 2))
                .collect();
            let mg = MultiDigraph::new(2, arcs).unwrap();
            let d = mg.degrees();
            if d.in_degrees.iter().all(|&x| x >= 1) && d.out_degrees.iter().all(|&x| x >= 1) {
                total += 1;
                if !mg.has_simple_sink_or_source_set() {
                    good += 1;
                }
            }
        }
        assert_eq!(good, 0);
        assert!(total > 0);
    }

    #[test]
    fn pgf_matches_p_no_simple_ss_at_z0() {
        let pgf = pgf_x_mg_exact(3, 4, 8).unwrap();
        assert_eq!(pgf.coeff(&[0]), r(1, 3));
        assert_eq!(pgf.eval_at_one(), r(1, 1));
    }

    #[test]
    fn pgf_distribution_matches_oracle_2_3() {
        let pgf = pgf_x_mg_exact(2, 3, 8).unwrap();
        let oracle = mg_oracle(2, 3).unwrap();
        for (x, &cnt) in oracle.x_counts.iter().enumerate() {
            assert_eq!(
                pgf.coeff(&[x as u16]),
                BigRational::new(BigInt::from(cnt), BigInt::from(oracle.total)),
                "x = {x}"
            );
        }
    }
}
