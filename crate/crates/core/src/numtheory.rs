//! Modular arithmetic, factorization, totients, multiplicative orders and
//! Jacobi symbols, in both u64 and arbitrary-precision flavours.
//!
//! The u64 functions are the workhorses for graph-sized moduli; the
//! `BigUint` versions exist for showcase moduli with dozens of digits,
//! where exponents of the resulting determinants no longer fit any
//! machine word.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Primes below 10^6, shared by the trial-division stages.
fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        const LIMIT: usize = 1_000_000;
        let mut composite = vec![false; LIMIT];
        let mut primes = Vec::with_capacity(78_498);
        for p in 2..LIMIT {
            if !composite[p] {
                primes.push(p as u32);
                let mut q = p * p;
                while q < LIMIT {
                    composite[q] = true;
                    q += p;
                }
            }
        }
        primes
    })
}

pub fn mod_mul_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m with u128 intermediates; m >= 1.
pub fn mod_pow_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul_u64(acc, a, m);
        }
        a = mod_mul_u64(a, a, m);
        e >>= 1;
    }
    acc
}

/// Canonical inverse of a modulo m, or `NotInvertible`.
pub fn mod_inverse_u64(a: i64, m: u64) -> Result<u64> {
    let a = a.rem_euclid(m as i64) as u64;
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible(a.to_string(), m.to_string()));
    }
    Ok(t0.rem_euclid(m as i128) as u64)
}

/// Jacobi symbol (a/n) for odd n >= 1.
pub fn jacobi_u64(a: i64, n: u64) -> Result<i8> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1i8;
    while a != 0 {
        while a & 1 == 0 {
            a >>= 1;
            if matches!(n & 7, 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a & 3 == 3 && n & 3 == 3 {
            t = -t;
        }
        a %= n;
    }
    Ok(if n == 1 { t } else { 0 })
}

/// Deterministic Miller-Rabin; the witness set covers all of u64.
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
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho. Caller guarantees n is odd, composite and > 1.
fn pollard_brent_u64(n: u64) -> u64 {
    for c in 1..64u64 {
        let f = |x: u64| (mod_mul_u64(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut saved = x;
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
            count += 1;
            if count == 1 << 20 {
                break;
            }
            let _ = saved;
            saved = x;
        }
        if d != n && d != 1 {
            return d;
        }
    }
    // Unreachable for composite odd u64 in practice.
    panic!("rho failed to split {n}");
}

/// Prime factorization of n >= 1 as (prime, exponent) pairs, primes increasing.
pub fn factorize_u64(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut rest = n;
    let mut out: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if rest > 1 {
        if rest < 1_000_000_000_000 || is_prime_u64(rest) {
            // trial division ran past the square root, so rest is prime
            out.push((rest, 1));
        } else {
            let mut stack = vec![rest];
            let mut primes = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime_u64(m) {
                    primes.push(m);
                } else {
                    let d = pollard_brent_u64(m);
                    stack.push(d);
                    stack.push(m / d);
                }
            }
            primes.sort_unstable();
            for p in primes {
                match out.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => out.push((p, 1)),
                }
            }
        }
    }
    out
}

pub fn euler_phi_u64(n: u64) -> u64 {
    factorize_u64(n)
        .iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All divisors of n in increasing order.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factorize_u64(n) {
        let prev = divs.clone();
        let mut pw = 1u64;
        for _ in 0..e {
            pw *= p;
            divs.extend(prev.iter().map(|d| d * pw));
        }
    }
    divs.sort_unstable();
    divs
}

/// Least k >= 1 with a^k = 1 (mod n); ord_1(a) = 1 by convention.
pub fn multiplicative_order_u64(a: u64, n: u64) -> Result<u64> {
    if n == 1 {
        return Ok(1);
    }
    let a = a % n;
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime);
    }
    let mut order = euler_phi_u64(n);
    for (p, e) in factorize_u64(order) {
        for _ in 0..e {
            if order % p == 0 && mod_pow_u64(a, order / p, n) == 1 {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

fn to_canonical(a: &BigInt, n: &BigUint) -> BigUint {
    let n_int = BigInt::from(n.clone());
    a.mod_floor(&n_int).to_biguint().expect("canonical residue")
}

/// a^e mod n with canonical result in [0, n); n >= 1.
pub fn mod_pow(a: &BigInt, e: &BigUint, n: &BigUint) -> BigUint {
    if n.is_one() {
        return BigUint::zero();
    }
    to_canonical(a, n).modpow(e, n)
}

/// Canonical x with a*x = 1 (mod n), or `NotInvertible`.
pub fn mod_inverse(a: &BigInt, n: &BigUint) -> Result<BigUint> {
    let n_int = BigInt::from(n.clone());
    let ext = a.extended_gcd(&n_int);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible(a.to_string(), n.to_string()));
    }
    Ok(to_canonical(&ext.x, n))
}

/// Jacobi symbol (a/n) for odd n >= 1; 0 exactly when gcd(a,n) > 1.
pub fn jacobi(a: &BigInt, n: &BigUint) -> Result<i8> {
    if n.is_even() {
        return Err(Error::EvenModulus);
    }
    if let (Some(n64), Some(a64)) = (n.to_u64(), a.mod_floor(&BigInt::from(n.clone())).to_i64()) {
        return jacobi_u64(a64, n64);
    }
    let mut a = to_canonical(a, n);
    let mut n = n.clone();
    let mut t = 1i8;
    let low = |x: &BigUint, k: u64| (x % k).to_u64().unwrap();
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            if matches!(low(&n, 8), 3 | 5) {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if low(&a, 4) == 3 && low(&n, 4) == 3 {
            t = -t;
        }
        a %= &n;
    }
    Ok(if n.is_one() { t } else { 0 })
}

/// Primality test: deterministic for u64, fixed-base Miller-Rabin above that.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    'witness: for &a in small_primes().iter().take(25) {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic rho splitter for numbers past the trial-division bound.
fn pollard_rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            let d = diff.gcd(n);
            if !d.is_one() {
                if &d == n {
                    break;
                }
                return d;
            }
        }
        let _ = &one;
    }
    panic!("rho failed to split {n}");
}

/// Ordered prime factorization with verified prime entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// Factorize n >= 1. 1 maps to the empty product.
    pub fn of(n: &BigUint) -> Self {
        assert!(!n.is_zero(), "factorize requires n >= 1");
        if let Some(n64) = n.to_u64() {
            return Self {
                factors: factorize_u64(n64)
                    .into_iter()
                    .map(|(p, e)| (BigUint::from(p), e))
                    .collect(),
            };
        }
        let mut rest = n.clone();
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for &p in small_primes() {
            let p = BigUint::from(p);
            if (&rest % &p).is_zero() {
                let mut e = 0;
                while (&rest % &p).is_zero() {
                    rest /= &p;
                    e += 1;
                }
                factors.push((p, e));
            }
            if rest.is_one() {
                break;
            }
        }
        if !rest.is_one() {
            let mut stack = vec![rest];
            let mut primes = Vec::new();
            while let Some(m) = stack.pop() {
                if is_prime(&m) {
                    primes.push(m);
                } else {
                    let d = pollard_rho_big(&m);
                    stack.push(&m / &d);
                    stack.push(d);
                }
            }
            primes.sort();
            for p in primes {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
        Self { factors }
    }

    pub fn of_u64(n: u64) -> Self {
        Self::of(&BigUint::from(n))
    }

    /// Build from explicit parts; primes must be increasing and pass the
    /// primality check.
    pub fn from_parts(factors: Vec<(BigUint, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidInput("factor primes must be increasing"));
            }
        }
        for (p, e) in &factors {
            if *e == 0 || !is_prime(p) {
                return Err(Error::InvalidInput("factor entries must be prime^positive"));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    /// Product of prime^exponent; the empty product is 1.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn euler_phi(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(e - 1) * (p - 1u32))
    }

    /// All divisors in increasing order.
    pub fn divisors(&self) -> Vec<BigUint> {
        let mut divs = vec![BigUint::one()];
        for (p, e) in &self.factors {
            let prev = divs.clone();
            let mut pw = BigUint::one();
            for _ in 0..*e {
                pw *= p;
                divs.extend(prev.iter().map(|d| d * &pw));
            }
        }
        divs.sort();
        divs
    }

    /// The factorization with prime p removed, plus the removed exponent.
    pub fn split_off(&self, p: &BigUint) -> (Self, u32) {
        let mut kept = Vec::new();
        let mut removed = 0;
        for (q, e) in &self.factors {
            if q == p {
                removed = *e;
            } else {
                kept.push((q.clone(), *e));
            }
        }
        (Self { factors: kept }, removed)
    }
}

/// Euler totient of a factorized value.
pub fn euler_phi(f: &Factorization) -> BigUint {
    f.euler_phi()
}

/// Divisor list of a factorized value.
pub fn divisors(f: &Factorization) -> Vec<BigUint> {
    f.divisors()
}

/// Least k >= 1 with a^k = 1 (mod n).
///
/// The order is found by reducing a known multiple of it along that
/// multiple's prime factors: phi(n) by default, or `hint` when the caller
/// already knows a factored exponent bound (this is what makes moduli
/// feasible whose totient nobody can factor).
pub fn multiplicative_order(
    a: &BigInt,
    n: &BigUint,
    hint: Option<&Factorization>,
) -> Result<BigUint> {
    if n.is_one() {
        return Ok(BigUint::one());
    }
    let am = to_canonical(a, n);
    if !am.gcd(n).is_one() {
        return Err(Error::NotCoprime);
    }
    let bound = match hint {
        Some(h) => h.clone(),
        None => Factorization::of(&Factorization::of(n).euler_phi()),
    };
    let mut order = bound.value();
    if !am.modpow(&order, n).is_one() {
        return Err(Error::InvalidHint);
    }
    for (p, e) in bound.factors() {
        for _ in 0..*e {
            if (&order % p).is_zero() && am.modpow(&(&order / p), n).is_one() {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// ord_{p^k}(a) for k = 1..=max_exp, lifted step by step from ord_p(a).
///
/// Going from p^j to p^{j+1} the order either stays or gains a factor p,
/// so one modpow per level decides.
pub fn prime_power_orders(a: &BigUint, p: &BigUint, max_exp: u32, ord_p: &BigUint) -> Vec<BigUint> {
    let mut orders = Vec::with_capacity(max_exp as usize);
    let mut ord = ord_p.clone();
    let mut modulus = p.clone();
    orders.push(ord.clone());
    for _ in 1..max_exp {
        modulus *= p;
        if !a.modpow(&ord, &modulus).is_one() {
            ord *= p;
        }
        orders.push(ord.clone());
    }
    orders
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    #[test]
    fn factorize_examples() {
        let f = Factorization::of_u64(175);
        assert_eq!(
            f.factors(),
            &[(BigUint::from(5u32), 2), (BigUint::from(7u32), 1)]
        );
        assert!(Factorization::of_u64(1).factors().is_empty());
        // 34-digit prime showcase modulus: must come back as itself^1
        let n = big("3754733257489862401973357979128773");
        let f = Factorization::of(&n);
        assert_eq!(f.factors(), &[(n.clone(), 1)]);
        assert!(is_prime(&n));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(Factorization::of_u64(175).euler_phi(), BigUint::from(120u32));
        assert_eq!(Factorization::of_u64(1).euler_phi(), BigUint::one());
        // phi(13) against a direct unit count
        let direct = (1u64..13).filter(|a| a.gcd(&13) == 1).count() as u64;
        assert_eq!(euler_phi_u64(13), direct);
        assert_eq!(direct, 12);
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors_u64(175), vec![1, 5, 7, 25, 35, 175]);
        assert_eq!(divisors_u64(1), vec![1]);
        assert_eq!(divisors_u64(13), vec![1, 13]);
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow_u64(3, 0, 7), 1);
        assert_eq!(mod_pow_u64(3, 5, 11), 1);
        let n = big("3754733257489862401973357979128773");
        assert_eq!(
            mod_pow(&BigInt::from(3), &BigUint::from(71u32), &n),
            BigUint::one()
        );
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse_u64(2, 13).unwrap(), 7);
        assert_eq!(mod_inverse_u64(1, 97).unwrap(), 1);
        assert_eq!(mod_inverse_u64(2, 4), Err(Error::NotInvertible("2".into(), "4".into())));
        assert_eq!(
            mod_inverse(&BigInt::from(2), &BigUint::from(13u32)).unwrap(),
            BigUint::from(7u32)
        );
    }

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order_u64(3, 1).unwrap(), 1);
        assert_eq!(multiplicative_order_u64(2, 175).unwrap(), 60);
        assert_eq!(multiplicative_order_u64(2, 35).unwrap(), 12);
        assert_eq!(multiplicative_order_u64(3, 11).unwrap(), 5);
        // naive cross-check for ord_11(3)
        let mut k = 1;
        let mut x = 3u64 % 11;
        while x != 1 {
            x = x * 3 % 11;
            k += 1;
        }
        assert_eq!(k, 5);
        assert_eq!(multiplicative_order_u64(2, 4), Err(Error::NotCoprime));
    }

    #[test]
    fn order_with_hint_on_repunit_modulus() {
        let n = big("3754733257489862401973357979128773");
        let hint = Factorization::of_u64(71);
        let ord = multiplicative_order(&BigInt::from(3), &n, Some(&hint)).unwrap();
        assert_eq!(ord, BigUint::from(71u32));
        // a hint that is not actually an exponent multiple must be rejected
        let bad = Factorization::of_u64(73);
        assert_eq!(
            multiplicative_order(&BigInt::from(3), &n, Some(&bad)),
            Err(Error::InvalidHint)
        );
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi_u64(2, 7).unwrap(), 1);
        assert_eq!(jacobi_u64(2, 3).unwrap(), -1);
        for n in [1u64, 9, 15, 21, 1001] {
            assert_eq!(jacobi_u64(1, n).unwrap(), 1);
        }
        assert_eq!(jacobi_u64(3, 45).unwrap(), 0);
        assert_eq!(jacobi_u64(2, 4), Err(Error::EvenModulus));
        assert_eq!(
            jacobi(&BigInt::from(1001), &BigUint::from(9907u32)).unwrap(),
            -1
        );
    }

    #[test]
    fn jacobi_matches_legendre_on_small_primes() {
        for &p in small_primes().iter().take_while(|&&p| p <= 97) {
            let p = p as u64;
            if p == 2 {
                continue;
            }
            for a in 0..p {
                let legendre = match mod_pow_u64(a, (p - 1) / 2, p) {
                    0 => 0i8,
                    1 => 1,
                    x if x == p - 1 => -1,
                    _ => unreachable!(),
                };
                assert_eq!(jacobi_u64(a as i64, p).unwrap(), legendre);
            }
        }
    }

    #[test]
    fn phi_divisor_sum_is_identity() {
        for n in 1..=2000u64 {
            let total: u64 = divisors_u64(n).iter().map(|&d| euler_phi_u64(d)).sum();
            assert_eq!(total, n);
        }
    }

    #[test]
    fn prime_power_order_lifting() {
        // ord_5(2) = 4, ord_25(2) = 20
        let orders = prime_power_orders(
            &BigUint::from(2u32),
            &BigUint::from(5u32),
            2,
            &BigUint::from(4u32),
        );
        assert_eq!(orders, vec![BigUint::from(4u32), BigUint::from(20u32)]);
        for (e, ord) in orders.iter().enumerate() {
            let m = 5u64.pow(e as u32 + 1);
            assert_eq!(
                multiplicative_order_u64(2, m).unwrap(),
                ord.to_u64().unwrap()
            );
        }
    }
}
