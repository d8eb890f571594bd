//! Conway polynomial computation over prime fields.
//!
//! A Conway polynomial `C_{p,m}` is the minimal monic primitive polynomial of
//! degree `m` over GF(p) (in the standard signed lexicographic order) that is
//! norm-compatible with `C_{p,k}` for every proper divisor `k` of `m`.
//! Computing them on demand keeps field representations canonical without
//! shipping a table.

use std::collections::HashMap;

/// Dense polynomial over GF(p), little-endian coefficients, no trailing zeros.
pub type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn deg(f: &Poly) -> usize {
    f.len() - 1
}

fn poly_mul(p: u64, a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo monic `f`.
fn poly_rem(p: u64, a: &Poly, f: &Poly) -> Poly {
    let mut r = a.clone();
    let df = deg(f);
    while r.len() > df && !(r.len() == 1 && r[0] == 0) {
        let lead = *r.last().unwrap();
        if lead == 0 {
            r.pop();
            continue;
        }
        let shift = r.len() - 1 - df;
        for i in 0..=df {
            let idx = shift + i;
            let sub = (lead * f[i]) % p;
            r[idx] = (r[idx] + p * p - sub) % p;
        }
        r = trim(r);
        if r.len() == 1 && r[0] == 0 {
            break;
        }
    }
    trim(r)
}

fn poly_mulmod(p: u64, a: &Poly, b: &Poly, f: &Poly) -> Poly {
    poly_rem(p, &poly_mul(p, a, b), f)
}

fn poly_powmod(p: u64, base: &Poly, mut e: u64, f: &Poly) -> Poly {
    let mut acc = vec![1u64];
    let mut b = poly_rem(p, base, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(p, &acc, &b, f);
        }
        b = poly_mulmod(p, &b, &b, f);
        e >>= 1;
    }
    acc
}

fn poly_sub(p: u64, a: &Poly, b: &Poly) -> Poly {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for i in 0..len {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        out[i] = (ai + p - bi) % p;
    }
    trim(out)
}

fn poly_gcd(p: u64, a: &Poly, b: &Poly) -> Poly {
    let mut x = trim(a.clone());
    let mut y = trim(b.clone());
    while !(y.len() == 1 && y[0] == 0) {
        // make y monic so poly_rem applies
        let inv = mod_inv(*y.last().unwrap(), p);
        let ym: Poly = y.iter().map(|&c| (c * inv) % p).collect();
        let r = poly_rem(p, &x, &ym);
        x = ym;
        y = r;
    }
    x
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is a small prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = (result * base) % p;
        }
        base = (base * base) % p;
        e >>= 1;
    }
    result
}

fn is_one(f: &Poly) -> bool {
    f.len() == 1 && f[0] == 1
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut fs = Vec::new();
    let mut d = 2u64;
    while d * d <= x {
        if x % d == 0 {
            fs.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += 1;
    }
    if x > 1 {
        fs.push(x);
    }
    fs
}

/// Rabin irreducibility test for a monic polynomial of degree m over GF(p).
fn is_irreducible(p: u64, f: &Poly) -> bool {
    let m = deg(f) as u64;
    if m == 0 {
        return false;
    }
    let x = poly_rem(p, &vec![0u64, 1], f);
    // x^{p^m} == x (mod f)
    let mut xp = x.clone();
    for _ in 0..m {
        xp = poly_powmod(p, &xp, p, f);
    }
    if xp != x {
        return false;
    }
    for l in prime_factors(m) {
        let k = m / l;
        let mut xk = x.clone();
        for _ in 0..k {
            xk = poly_powmod(p, &xk, p, f);
        }
        let d = poly_sub(p, &xk, &x);
        let g = poly_gcd(p, f, &d);
        if !is_one(&normalize_monic(p, &g)) {
            return false;
        }
    }
    true
}

fn normalize_monic(p: u64, f: &Poly) -> Poly {
    let lead = *f.last().unwrap();
    if lead == 0 || lead == 1 {
        return f.clone();
    }
    let inv = mod_inv(lead, p);
    f.iter().map(|&c| (c * inv) % p).collect()
}

/// Is x primitive modulo the irreducible f? (order of x equals p^m - 1)
fn x_is_primitive(p: u64, f: &Poly) -> bool {
    let m = deg(f) as u32;
    let order = p.pow(m) - 1;
    let x = vec![0u64, 1];
    for l in prime_factors(order) {
        let e = order / l;
        if is_one(&poly_powmod(p, &x, e, f)) {
            return false;
        }
    }
    true
}

/// Evaluate g (scalar coefficients) at the residue u modulo f, by Horner.
fn eval_poly_at_residue(p: u64, g: &Poly, u: &Poly, f: &Poly) -> Poly {
    let mut acc = vec![0u64];
    for &c in g.iter().rev() {
        acc = poly_mulmod(p, &acc, u, f);
        if c != 0 {
            acc = trim(poly_sub(p, &acc, &vec![(p - c) % p]));
        }
    }
    acc
}

/// Smallest primitive root modulo p.
fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    'outer: for g in 2..p {
        for &l in &factors {
            let mut acc = 1u64;
            let mut base = g;
            let mut e = (p - 1) / l;
            while e > 0 {
                if e & 1 == 1 {
                    acc = (acc * base) % p;
                }
                base = (base * base) % p;
                e >>= 1;
            }
            if acc == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}")
}

/// Candidate coefficient vectors of degree m in the Conway (signed lex) order.
///
/// Coefficient a_i is ranked by the integer value of (-1)^{m-i} a_i mod p,
/// scanned from a_{m-1} down to a_0. The constant coefficient is pinned by
/// norm-compatibility with C_{p,1}: (-1)^m a_0 must equal the smallest
/// primitive root mod p.
struct Candidates {
    p: u64,
    m: usize,
    a0: u64,
    // rank digits for a_{m-1}..a_1, counting in plain lex (most significant first)
    ranks: Vec<u64>,
    done: bool,
}

impl Candidates {
    fn new(p: u64, m: usize) -> Self {
        let g = primitive_root(p);
        // (-1)^m a_0 = g  =>  a_0 = (-1)^m g
        let a0 = if m % 2 == 0 { g % p } else { (p - g % p) % p };
        Candidates {
            p,
            m,
            a0,
            ranks: vec![0; m.saturating_sub(1)],
            done: false,
        }
    }
}

impl Iterator for Candidates {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let p = self.p;
        let m = self.m;
        let mut f = vec![0u64; m + 1];
        f[m] = 1;
        f[0] = self.a0;
        // ranks[0] corresponds to a_{m-1}, ranks[m-2] to a_1
        for (idx, &r) in self.ranks.iter().enumerate() {
            let i = m - 1 - idx;
            // key = (-1)^{m-i} a_i  =>  a_i = (-1)^{m-i} key
            let a = if (m - i) % 2 == 0 { r } else { (p - r) % p };
            f[i] = a;
        }
        // increment rank counter (least significant digit is a_1's rank)
        let mut carry = true;
        for d in self.ranks.iter_mut().rev() {
            if carry {
                *d += 1;
                if *d == p {
                    *d = 0;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            self.done = true;
        }
        Some(f)
    }
}

/// Compute the Conway polynomial C_{p,m}, memoizing over divisors.
pub fn conway(p: u64, m: usize, memo: &mut HashMap<(u64, usize), Poly>) -> Poly {
    if let Some(f) = memo.get(&(p, m)) {
        return f.clone();
    }
    let divisors: Vec<usize> = (1..m).filter(|k| m % k == 0).collect();
    let subs: Vec<(usize, Poly)> = divisors.iter().map(|&k| (k, conway(p, k, memo))).collect();
    let big = p.pow(m as u32) - 1;
    for f in Candidates::new(p, m) {
        if !is_irreducible(p, &f) {
            continue;
        }
        if !x_is_primitive(p, &f) {
            continue;
        }
        let mut compatible = true;
        for (k, ck) in &subs {
            if *k == 1 {
                continue; // pinned via the constant coefficient
            }
            let s = big / (p.pow(*k as u32) - 1);
            let u = poly_powmod(p, &vec![0, 1], s, &f);
            let v = eval_poly_at_residue(p, ck, &u, &f);
            if !(v.len() == 1 && v[0] == 0) {
                compatible = false;
                break;
            }
        }
        if compatible {
            memo.insert((p, m), f.clone());
            return f;
        }
    }
    unreachable!("Conway polynomial search exhausted for p={p}, m={m}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(p: u64, m: usize) -> Poly {
        conway(p, m, &mut HashMap::new())
    }

    #[test]
    fn matches_published_small_values() {
        // hand-verified against the standard tables
        assert_eq!(cw(2, 1), vec![1, 1]);
        assert_eq!(cw(2, 2), vec![1, 1, 1]);
        assert_eq!(cw(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(cw(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(cw(2, 5), vec![1, 0, 1, 0, 0, 1]);
        assert_eq!(cw(2, 6), vec![1, 1, 0, 1, 1, 0, 1]);
        assert_eq!(cw(3, 1), vec![1, 1]);
        assert_eq!(cw(3, 2), vec![2, 2, 1]);
        assert_eq!(cw(3, 3), vec![1, 2, 0, 1]);
        assert_eq!(cw(5, 1), vec![3, 1]);
        assert_eq!(cw(5, 2), vec![2, 4, 1]);
    }

    #[test]
    fn conway_is_irreducible_and_primitive() {
        for &(p, m) in &[(2u64, 6usize), (3, 4), (5, 3), (7, 2)] {
            let f = cw(p, m);
            assert_eq!(f.len(), m + 1);
            assert_eq!(*f.last().unwrap(), 1);
            assert!(is_irreducible(p, &f));
            assert!(x_is_primitive(p, &f));
        }
    }

    #[test]
    fn norm_compatibility_holds() {
        // root of C_{3,4} raised to (3^4-1)/(3^2-1) must satisfy C_{3,2}
        let f = cw(3, 4);
        let c2 = cw(3, 2);
        let u = poly_powmod(3, &vec![0, 1], 80 / 8, &f);
        let v = eval_poly_at_residue(3, &c2, &u, &f);
        assert_eq!(v, vec![0]);
    }
}
