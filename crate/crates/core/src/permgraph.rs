//! Permutations on Z_N arising from the graph rules: cycle structure,
//! signs, analytic cycle censuses, and the permutation-pair determinant.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::Serialize;

use crate::detvalue::DetValue;
use crate::exactla::BigMatrix;
use crate::numtheory::{
    divisors_u64, euler_phi_u64, jacobi_u64, mod_inverse_u64, multiplicative_order_u64,
};
use crate::{Error, Result};

/// Bijection of {0..n-1}, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { image: (0..n).collect() }
    }

    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || seen[v] {
                return Err(Error::InvalidInput("image is not a bijection"));
            }
            seen[v] = true;
        }
        Ok(Self { image })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Self { image: inv }
    }

    /// self after other: (self.compose(other))(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        Ok(Self { image: other.image.iter().map(|&i| self.image[i]).collect() })
    }

    /// Permutation matrix P with P[i, pi(i)] = 1.
    pub fn matrix(&self) -> BigMatrix {
        BigMatrix::from_permutation_image(&self.image)
    }
}

/// Cycles rotated to start at their minimum, sorted by that minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Sorted multiset of cycle lengths.
    pub fn length_multiset(&self) -> Vec<usize> {
        let mut lengths = self.lengths();
        lengths.sort_unstable();
        lengths
    }

    pub fn has_even_length_cycle(&self) -> bool {
        self.cycles.iter().any(|c| c.len() % 2 == 0)
    }

    pub fn to_permutation(&self) -> Permutation {
        let mut image = vec![0; self.n];
        for cycle in &self.cycles {
            for (k, &v) in cycle.iter().enumerate() {
                image[v] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation { image }
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            write!(f, "(")?;
            for (k, v) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Canonical cycle decomposition.
pub fn cycles(p: &Permutation) -> CycleDecomposition {
    let n = p.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut v = p.apply(start);
        while v != start {
            seen[v] = true;
            cycle.push(v);
            v = p.apply(v);
        }
        out.push(cycle);
    }
    CycleDecomposition { n, cycles: out }
}

/// Parity via the cycle decomposition: (-1)^(n - #cycles).
pub fn sign(p: &Permutation) -> i8 {
    let cl = cycles(p).cycle_count();
    if (p.n() - cl) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the multiplication-by-a permutation on Z_N, evaluated as the
/// Jacobi symbol (a/N). The explicit-permutation route is exercised against
/// this in the verification suites.
pub fn zolotarev_sign(a: i64, n: u64) -> Result<i8> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    let am = a.rem_euclid(n as i64) as u64;
    if n > 1 && am.gcd(&n) != 1 {
        return Err(Error::NotCoprime);
    }
    Ok(jacobi_u64(a, n).expect("odd modulus"))
}

fn affine_image(n: u64, mul: u64, add: u64) -> Vec<usize> {
    let n128 = n as u128;
    (0..n)
        .map(|i| ((mul as u128 * i as u128 + add as u128) % n128) as usize)
        .collect()
}

/// The halving permutation pi2, odd-rule permutation pi3, and their
/// quotient pi0 = pi3 pi2^{-1} on Z_N (N odd).
///
/// pi3 and pi0 exist only when gcd(N,3) = 1; with `require_coprime3` they
/// are mandatory and 3 | N is an error, otherwise they come back as None.
#[derive(Debug, Clone)]
pub struct CollatzPerms {
    pub pi2: Permutation,
    pub pi3: Option<Permutation>,
    pub pi0: Option<Permutation>,
}

pub fn collatz_permutations(n: u64, require_coprime3: bool) -> Result<CollatzPerms> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    let inv2 = mod_inverse_u64(2, n).expect("2 invertible mod odd n");
    let pi2 = Permutation { image: affine_image(n, inv2, 0) };
    if n % 3 == 0 {
        if require_coprime3 {
            return Err(Error::NotCoprime3);
        }
        return Ok(CollatzPerms { pi2, pi3: None, pi0: None });
    }
    // pi3(i) = 2^{-1}(3i + 1); pi0(i) = 3i + (N+1)/2
    let pi3 = Permutation { image: affine_image(n, (3 * inv2 as u128 % n as u128) as u64, inv2) };
    let pi0 = Permutation { image: affine_image(n, 3 % n, inv2) };
    debug_assert_eq!(pi0.image, pi3.compose(&pi2.inverse()).unwrap().image);
    Ok(CollatzPerms { pi2, pi3: Some(pi3), pi0: Some(pi0) })
}

/// pi2, pi_{p,q}(i) = 2^{-1}(p i + q), and pi_{0,p,q} = pi_{p,q} pi2^{-1}
/// on Z_N; q is canonicalized mod N first, so negative q is fine.
#[derive(Debug, Clone)]
pub struct PnqPerms {
    pub pi2: Permutation,
    pub pi_pq: Permutation,
    pub pi0: Permutation,
}

pub fn pnq_permutations(p: u64, q: i64, n: u64) -> Result<PnqPerms> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    if p.is_even() || q % 2 == 0 {
        return Err(Error::InvalidInput("p and q must be odd"));
    }
    let qm = q.rem_euclid(n as i64) as u64;
    if n > 1 && (p.gcd(&n) != 1 || qm.gcd(&n) != 1) {
        return Err(Error::NotCoprime);
    }
    let inv2 = mod_inverse_u64(2, n).expect("2 invertible mod odd n");
    let pm = p % n.max(1);
    let pi2 = Permutation { image: affine_image(n, inv2, 0) };
    let pi_pq = Permutation {
        image: affine_image(
            n,
            (pm as u128 * inv2 as u128 % n as u128) as u64,
            (qm as u128 * inv2 as u128 % n as u128) as u64,
        ),
    };
    let pi0 = Permutation {
        image: affine_image(n, pm, (qm as u128 * inv2 as u128 % n as u128) as u64),
    };
    debug_assert_eq!(pi0.image, pi_pq.compose(&pi2.inverse()).unwrap().image);
    Ok(PnqPerms { pi2, pi_pq, pi0 })
}

/// A map on Z_N that may or may not be a bijection.
#[derive(Debug, Clone)]
pub struct ZnMap {
    pub image: Vec<usize>,
    pub bijective: bool,
}

impl ZnMap {
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.bijective {
            Some(Permutation { image: self.image.clone() })
        } else {
            None
        }
    }
}

/// The three Conway rules as maps on Z_N (N odd):
/// star(i) = 2^{-1} 3 i, plus/minus(i) = 4^{-1}(3 i +- 1).
///
/// All three are bijections exactly when gcd(N,3) = 1; for 3 | N the graph
/// builder still needs them as plain maps, so they are flagged, not errors.
#[derive(Debug, Clone)]
pub struct ConwayMaps {
    pub star: ZnMap,
    pub plus: ZnMap,
    pub minus: ZnMap,
}

pub fn conway_permutations(n: u64) -> Result<ConwayMaps> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    let bijective = n % 3 != 0;
    let inv2 = mod_inverse_u64(2, n).expect("2 invertible mod odd n");
    let inv4 = mod_inverse_u64(4, n).expect("4 invertible mod odd n");
    let n128 = n as u128;
    let star = affine_image(n, (3 * inv2 as u128 % n128) as u64, 0);
    let plus = affine_image(n, (3 * inv4 as u128 % n128) as u64, inv4);
    let minus = affine_image(
        n,
        (3 * inv4 as u128 % n128) as u64,
        ((n128 - 1) * inv4 as u128 % n128) as u64,
    );
    Ok(ConwayMaps {
        star: ZnMap { image: star, bijective },
        plus: ZnMap { image: plus, bijective },
        minus: ZnMap { image: minus, bijective },
    })
}

/// One row per divisor d of N: cycles of that class share a length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub divisor: u64,
    pub length: u64,
    pub count: u64,
}

/// Per-divisor cycle census of a permutation on Z_N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub n: u64,
    pub rows: Vec<CensusRow>,
}

impl CycleCensus {
    /// Sum of length * count over all rows; always equals N.
    pub fn total(&self) -> u64 {
        self.rows.iter().map(|r| r.length * r.count).sum()
    }

    pub fn cycle_count(&self) -> u64 {
        self.rows.iter().map(|r| r.count).sum()
    }
}

/// Analytic census of pi2 on Z_N (N odd): the cycle through n, with
/// d = gcd(n, N), has length ord_{N/d}(2), and the class of divisor d
/// contributes phi(N/d)/ord_{N/d}(2) cycles.
pub fn census_pi2(n: u64) -> Result<CycleCensus> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    let mut rows = Vec::new();
    for d in divisors_u64(n) {
        let m = n / d;
        let length = multiplicative_order_u64(2, m).expect("2 coprime to odd m");
        let phi = euler_phi_u64(m);
        assert_eq!(phi % length, 0);
        rows.push(CensusRow { divisor: d, length, count: phi / length });
    }
    Ok(CycleCensus { n, rows })
}

/// Analytic census of pi0 on Z_N (N odd, coprime to 3): the cycle through
/// n, with d = N / gcd(4n+1, N), has length ord_d(3); divisor d
/// contributes phi(d)/ord_d(3) cycles. The total cycle count is K_N.
pub fn census_pi0(n: u64) -> Result<CycleCensus> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    if n % 3 == 0 {
        return Err(Error::NotCoprime3);
    }
    let mut rows = Vec::new();
    for d in divisors_u64(n) {
        let length = multiplicative_order_u64(3, d).expect("3 coprime to d");
        let phi = euler_phi_u64(d);
        assert_eq!(phi % length, 0);
        rows.push(CensusRow { divisor: d, length, count: phi / length });
    }
    Ok(CycleCensus { n, rows })
}

/// Group the actual cycles of a decomposition by a divisor key, for
/// comparison against the analytic censuses.
pub fn empirical_census(
    n: u64,
    decomp: &CycleDecomposition,
    mut divisor_of: impl FnMut(u64) -> u64,
) -> CycleCensus {
    let mut grouped: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    for cycle in decomp.cycles() {
        let d = divisor_of(cycle[0] as u64);
        *grouped.entry((d, cycle.len() as u64)).or_insert(0) += 1;
    }
    CycleCensus {
        n,
        rows: grouped
            .into_iter()
            .map(|((divisor, length), count)| CensusRow { divisor, length, count })
            .collect(),
    }
}

/// Determinant of the two-permutation graph C(r1, r2) = P(r1) + P(r2):
/// zero as soon as r0 = r2 r1^{-1} has a cycle of even length, otherwise
/// sign(r1) * 2^(#cycles of r0).
pub fn det_from_pair(r1: &Permutation, r2: &Permutation) -> Result<DetValue> {
    if r1.n() != r2.n() {
        return Err(Error::SizeMismatch(r1.n(), r2.n()));
    }
    let rho0 = r2.compose(&r1.inverse())?;
    let decomp = cycles(&rho0);
    if decomp.has_even_length_cycle() {
        return Ok(DetValue::zero());
    }
    Ok(DetValue::pow2(sign(r1), BigUint::from(decomp.cycle_count())))
}
