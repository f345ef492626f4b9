//! Finite fields F_{p^n} backed by precomputed discrete-log tables.
//!
//! Elements are stored as a "vector representation": the coefficients of the
//! element written in the power basis of a canonical defining polynomial,
//! packed base p into a single `u32`. Addition works digit-wise on that
//! packing; multiplication goes through exp/log tables. Tables are built once
//! per field order and leaked, so `FqElem` is `Copy` and thread-safe.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order for residue fields (base fields are capped
/// far lower by the local-field constructors).
pub const MAX_ORDER: u64 = 1 << 16;

pub struct FqTable {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Coefficients of the canonical monic defining polynomial, degree n,
    /// ascending, entries in 0..p. For n = 1 this is [0, 1] (the polynomial x).
    pub modulus: Vec<u32>,
    /// exp[i] = vecrep of g^i for the canonical generator g, i in 0..q-1.
    exp: Vec<u32>,
    /// log[vecrep] for vecrep in 1..q; log[0] is unused.
    log: Vec<u32>,
}

impl fmt::Debug for FqTable {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "FqTable(q={})", self.q)
    }
}

fn registry() -> &'static Mutex<HashMap<u32, &'static FqTable>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static FqTable>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn embed_registry() -> &'static Mutex<HashMap<(u32, u32), &'static [u32]>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), &'static [u32]>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

fn factor_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q {
        if q % p == 0 {
            let mut m = q;
            let mut n = 0u32;
            while m % p == 0 {
                m /= p;
                n += 1;
            }
            return if m == 1 { Some((p as u32, n)) } else { None };
        }
        p += 1;
    }
    Some((q as u32, 1))
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// ----- small polynomial arithmetic over F_p used only for table construction -----

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    // reduce mod f (monic)
    let df = f.len() - 1;
    for i in (df..prod.len()).rev() {
        let c = prod[i] % p as u64;
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for k in 0..df {
            let idx = i - df + k;
            let sub = (c * f[k] as u64) % p as u64;
            prod[idx] = (prod[idx] + p as u64 - sub) % p as u64;
        }
    }
    let mut out: Vec<u32> = prod.iter().take(df.max(1)).map(|&c| c as u32).collect();
    poly_trim(&mut out);
    out
}

fn poly_powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, f, p);
        }
        b = poly_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let mut out = vec![0u32; len];
    for i in 0..len {
        let ai = *a.get(i).unwrap_or(&0);
        let bi = *b.get(i).unwrap_or(&0);
        out[i] = (ai + p - bi) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        // a mod b, b monic-ized on the fly
        let lc = *b.last().unwrap();
        let lc_inv = mod_inv_u32(lc, p);
        let bm: Vec<u32> = b.iter().map(|&c| (c as u64 * lc_inv as u64 % p as u64) as u32).collect();
        while a.len() >= bm.len() && !a.is_empty() {
            let c = *a.last().unwrap();
            let shift = a.len() - bm.len();
            for (k, &bk) in bm.iter().enumerate() {
                let sub = (c as u64 * bk as u64) % p as u64;
                a[shift + k] = ((a[shift + k] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            poly_trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn mod_inv_u32(a: u32, p: u32) -> u32 {
    // p prime, a != 0
    let mut t = 0i64;
    let mut new_t = 1i64;
    let mut r = p as i64;
    let mut new_r = (a % p) as i64;
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    ((t % p as i64 + p as i64) % p as i64) as u32
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = (f.len() - 1) as u32;
    let x = vec![0u32, 1];
    // x^{p^n} == x mod f
    let mut xp = x.clone();
    for _ in 0..n {
        xp = poly_powmod(&xp, p as u64, f, p);
    }
    if poly_sub(&xp, &x, p) != Vec::<u32>::new() {
        return false;
    }
    // gcd(x^{p^{n/l}} - x, f) == const for each prime l | n
    for l in prime_factors(n as u64) {
        let mut xe = x.clone();
        for _ in 0..(n / l as u32) {
            xe = poly_powmod(&xe, p as u64, f, p);
        }
        let diff = poly_sub(&xe, &x, p);
        let g = poly_gcd(&diff, f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl FqTable {
    /// Fetch (building and caching on first use) the table for F_q.
    pub fn get(q: u32) -> Result<&'static FqTable> {
        if let Some(t) = registry().lock().unwrap().get(&q) {
            return Ok(t);
        }
        let (p, n) = factor_prime_power(q as u64)
            .ok_or_else(|| Error::Invalid(format!("{q} is not a prime power")))?;
        if (q as u64) > MAX_ORDER {
            return Err(Error::Invalid(format!(
                "field order {q} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let table = Box::leak(Box::new(Self::build(p, n)));
        registry().lock().unwrap().insert(q, table);
        Ok(table)
    }

    fn build(p: u32, n: u32) -> FqTable {
        let q = (p as u64).pow(n) as u32;
        // canonical defining polynomial: first irreducible monic of degree n
        // in ascending order of packed low coefficients
        let modulus = if n == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            'outer: for low in 0..(q as u64) {
                let mut f = unpack(low as u32, p, n as usize);
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break 'outer;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        // multiplication table scaffolding via a canonical generator
        let mul_vec = |a: u32, b: u32| -> u32 {
            let pa = unpack(a, p, n as usize);
            let pb = unpack(b, p, n as usize);
            pack(&poly_mulmod(&pa, &pb, &modulus, p), p)
        };
        let pow_vec = |a: u32, mut e: u64| -> u32 {
            let mut acc = 1u32;
            let mut b = a;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_vec(acc, b);
                }
                b = mul_vec(b, b);
                e >>= 1;
            }
            acc
        };
        let order_factors = prime_factors(q as u64 - 1);
        let mut generator = 0u32;
        for cand in 2..q {
            if order_factors
                .iter()
                .all(|&r| pow_vec(cand, (q as u64 - 1) / r) != 1)
            {
                generator = cand;
                break;
            }
        }
        if q == 2 {
            generator = 1;
        }
        assert!(generator != 0, "F_q* is cyclic; a generator exists");

        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = acc;
            log[acc as usize] = i as u32;
            acc = mul_vec(acc, generator);
        }
        debug_assert_eq!(acc, 1);

        FqTable { p, n, q, modulus, exp, log }
    }

    pub fn zero(&'static self) -> FqElem {
        FqElem { table: self, rep: 0 }
    }

    pub fn one(&'static self) -> FqElem {
        FqElem { table: self, rep: 1 }
    }

    /// The canonical multiplicative generator.
    pub fn generator(&'static self) -> FqElem {
        FqElem { table: self, rep: self.exp[if self.q == 2 { 0 } else { 1 }] }
    }

    /// Element from an integer (image of 1 added to itself).
    pub fn from_int(&'static self, c: i64) -> FqElem {
        let r = c.rem_euclid(self.p as i64) as u32;
        FqElem { table: self, rep: r }
    }

    /// Element from its packed vector representation.
    pub fn from_rep(&'static self, rep: u32) -> FqElem {
        debug_assert!(rep < self.q);
        FqElem { table: self, rep }
    }

    /// All elements, ascending by vector representation.
    pub fn elements(&'static self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(move |rep| FqElem { table: self, rep })
    }

    /// Embedding table into the field of order `big` (same characteristic,
    /// degree dividing). Returns a map indexed by vector representation.
    pub fn embedding(&'static self, big: &'static FqTable) -> Result<&'static [u32]> {
        if big.p != self.p || big.n % self.n != 0 {
            return Err(Error::Invalid(format!(
                "no embedding of F_{} into F_{}",
                self.q, big.q
            )));
        }
        let key = (self.q, big.q);
        if let Some(t) = embed_registry().lock().unwrap().get(&key) {
            return Ok(t);
        }
        // canonical root of our defining polynomial inside `big`
        let mut root = None;
        for cand in big.elements() {
            let mut acc = big.zero();
            let mut pw = big.one();
            for &c in &self.modulus {
                acc = acc.add(pw.mul(big.from_int(c as i64)));
                pw = pw.mul(cand);
            }
            if acc.is_zero() {
                root = Some(cand);
                break;
            }
        }
        let root = root.expect("the subfield of compatible order contains a root");
        let mut table = vec![0u32; self.q as usize];
        for rep in 0..self.q {
            let digits = unpack(rep, self.p, self.n as usize);
            let mut acc = big.zero();
            let mut pw = big.one();
            for &d in &digits {
                acc = acc.add(pw.mul(big.from_int(d as i64)));
                pw = pw.mul(root);
            }
            table[rep as usize] = acc.rep;
        }
        let leaked: &'static [u32] = Box::leak(table.into_boxed_slice());
        embed_registry().lock().unwrap().insert(key, leaked);
        Ok(leaked)
    }
}

fn unpack(mut rep: u32, p: u32, n: usize) -> Vec<u32> {
    let mut out = vec![0u32; n];
    for slot in out.iter_mut() {
        *slot = rep % p;
        rep /= p;
    }
    out
}

fn pack(digits: &[u32], p: u32) -> u32 {
    let mut rep = 0u64;
    for &d in digits.iter().rev() {
        rep = rep * p as u64 + d as u64;
    }
    rep as u32
}

/// An element of a finite field F_q. Cheap to copy; the backing table is
/// shared, immutable and lives for the whole process.
#[derive(Clone, Copy)]
pub struct FqElem {
    table: &'static FqTable,
    rep: u32,
}

impl FqElem {
    pub fn field(&self) -> &'static FqTable {
        self.table
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    pub fn is_one(&self) -> bool {
        self.rep == 1
    }

    pub fn add(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.table.q, rhs.table.q);
        let p = self.table.p;
        if p == 2 {
            return FqElem { table: self.table, rep: self.rep ^ rhs.rep };
        }
        let mut a = self.rep;
        let mut b = rhs.rep;
        let mut rep = 0u32;
        let mut scale = 1u32;
        while a != 0 || b != 0 {
            rep += scale * ((a % p + b % p) % p);
            a /= p;
            b /= p;
            scale *= p;
        }
        FqElem { table: self.table, rep }
    }

    pub fn neg(self) -> FqElem {
        let p = self.table.p;
        if p == 2 {
            return self;
        }
        let mut a = self.rep;
        let mut rep = 0u32;
        let mut scale = 1u32;
        while a != 0 {
            let d = a % p;
            rep += scale * if d == 0 { 0 } else { p - d };
            a /= p;
            scale *= p;
        }
        FqElem { table: self.table, rep }
    }

    pub fn sub(self, rhs: FqElem) -> FqElem {
        self.add(rhs.neg())
    }

    pub fn mul(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.table.q, rhs.table.q);
        if self.rep == 0 || rhs.rep == 0 {
            return FqElem { table: self.table, rep: 0 };
        }
        let t = self.table;
        let m = t.q as u64 - 1;
        let i = (t.log[self.rep as usize] as u64 + t.log[rhs.rep as usize] as u64) % m;
        FqElem { table: t, rep: t.exp[i as usize] }
    }

    pub fn inv(self) -> Result<FqElem> {
        if self.rep == 0 {
            return Err(Error::Invalid("inverse of 0 in F_q".into()));
        }
        let t = self.table;
        let m = t.q - 1;
        let i = (m - t.log[self.rep as usize]) % m;
        Ok(FqElem { table: t, rep: t.exp[i as usize] })
    }

    pub fn pow(self, e: u64) -> FqElem {
        if self.rep == 0 {
            return if e == 0 { FqElem { table: self.table, rep: 1 } } else { self };
        }
        let t = self.table;
        let m = t.q as u64 - 1;
        let i = (t.log[self.rep as usize] as u64 % m * (e % m)) % m;
        FqElem { table: t, rep: t.exp[i as usize] }
    }

    /// x -> x^{base^j} for an arbitrary power base (used as x^{q^j} where q
    /// may be a proper subfield order of this element's field).
    pub fn frobenius_pow(self, base: u32, j: u32) -> FqElem {
        if self.rep == 0 {
            return self;
        }
        let t = self.table;
        let m = t.q as u64 - 1;
        let mut e = 1u64;
        for _ in 0..j {
            e = e * base as u64 % m;
        }
        self.pow(e)
    }

    /// Map into a larger field of the same characteristic.
    pub fn embed_into(self, big: &'static FqTable) -> Result<FqElem> {
        if std::ptr::eq(self.table, big) || self.table.q == big.q {
            return Ok(FqElem { table: big, rep: self.rep });
        }
        let map = self.table.embedding(big)?;
        Ok(FqElem { table: big, rep: map[self.rep as usize] })
    }

    /// If this element lies in the subfield of order `small.q`, return its
    /// representative there.
    pub fn project_into(self, small: &'static FqTable) -> Option<FqElem> {
        if self.table.q == small.q {
            return Some(FqElem { table: small, rep: self.rep });
        }
        let map = small.embedding(self.table).ok()?;
        map.iter()
            .position(|&r| r == self.rep)
            .map(|rep| FqElem { table: small, rep: rep as u32 })
    }

    /// Integer value when this element lies in the prime field.
    pub fn as_prime_int(&self) -> Option<u32> {
        if self.rep < self.table.p {
            Some(self.rep)
        } else {
            None
        }
    }
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.table.q == other.table.q && self.rep == other.rep
    }
}
impl Eq for FqElem {}

impl fmt::Debug for FqElem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", self)
    }
}

impl fmt::Display for FqElem {
    /// Prime-field elements print as integers; extension elements as
    /// polynomials in the canonical generator symbol `g`.
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.table;
        if t.n == 1 || self.rep < t.p {
            return write!(fm, "{}", self.rep);
        }
        // write in the power basis; the basis element x is g only when x
        // generates, so instead express in powers of the generator: find k
        // with rep = g^k and print g^k.
        let k = t.log[self.rep as usize];
        if k == 1 {
            write!(fm, "g")
        } else {
            write!(fm, "g^{}", k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_laws() {
        for q in [2u32, 3, 5, 7, 11, 13] {
            let f = FqTable::get(q).unwrap();
            for a in 0..q {
                let ea = f.from_rep(a);
                assert_eq!(ea.add(ea.neg()).rep(), 0);
                if a != 0 {
                    assert!(ea.mul(ea.inv().unwrap()).is_one());
                }
                for b in 0..q {
                    let eb = f.from_rep(b);
                    assert_eq!(ea.add(eb).rep(), (a + b) % q);
                    assert_eq!(ea.mul(eb).rep(), a * b % q);
                }
            }
        }
    }

    #[test]
    fn extension_field_laws() {
        for q in [4u32, 8, 9, 16, 25, 27, 81, 256] {
            let f = FqTable::get(q).unwrap();
            let els: Vec<FqElem> = f.elements().collect();
            // distributivity on a sample
            for &a in els.iter().take(12) {
                for &b in els.iter().take(12) {
                    for &c in els.iter().take(6) {
                        assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
                    }
                }
            }
            // Frobenius x -> x^p is additive
            let p = f.p;
            for &a in els.iter().take(20) {
                for &b in els.iter().take(20) {
                    assert_eq!(a.add(b).pow(p as u64), a.pow(p as u64).add(b.pow(p as u64)));
                }
            }
            // x^q = x
            for &a in &els {
                assert_eq!(a.pow(q as u64), a);
            }
        }
    }

    #[test]
    fn generator_has_full_order() {
        for q in [3u32, 4, 9, 16] {
            let f = FqTable::get(q).unwrap();
            let g = f.generator();
            let mut seen = std::collections::HashSet::new();
            let mut acc = f.one();
            for _ in 0..(q - 1) {
                assert!(seen.insert(acc.rep()));
                acc = acc.mul(g);
            }
            assert!(acc.is_one());
        }
    }

    #[test]
    fn embedding_is_a_field_hom() {
        let small = FqTable::get(3).unwrap();
        let big = FqTable::get(9).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                let ea = a.embed_into(big).unwrap();
                let eb = b.embed_into(big).unwrap();
                assert_eq!(a.add(b).embed_into(big).unwrap(), ea.add(eb));
                assert_eq!(a.mul(b).embed_into(big).unwrap(), ea.mul(eb));
            }
        }
        // and F_4 into F_16 (non-prime base)
        let small = FqTable::get(4).unwrap();
        let big = FqTable::get(16).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                let ea = a.embed_into(big).unwrap();
                let eb = b.embed_into(big).unwrap();
                assert_eq!(a.add(b).embed_into(big).unwrap(), ea.add(eb));
                assert_eq!(a.mul(b).embed_into(big).unwrap(), ea.mul(eb));
            }
        }
    }

    #[test]
    fn projection_inverts_embedding() {
        let small = FqTable::get(2).unwrap();
        let big = FqTable::get(4).unwrap();
        for a in small.elements() {
            let e = a.embed_into(big).unwrap();
            assert_eq!(e.project_into(small), Some(a));
        }
        let g = big.generator();
        assert_eq!(g.project_into(small), None);
    }
}
