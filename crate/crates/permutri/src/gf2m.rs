//! Exact arithmetic in GF(2^m), the quadratic tower GF(2^m) in GF(2^{2m}),
//! and roots-of-unity subgroups of the multiplicative group.
//!
//! Elements are bit masks over the polynomial basis; addition is XOR and
//! multiplication is a carry-less product reduced by the field modulus.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Smallest irreducible polynomial over GF(2) for each degree 1..=24,
/// encoded as an (m+1)-bit mask (bit i is the coefficient of x^i).
pub const MODULUS_TABLE: [u64; 24] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b, 0x20009, 0x40009, 0x80027, 0x100009, 0x200005, 0x400003, 0x800021, 0x100001b,
];

pub const MAX_DEGREE: u32 = 24;

/// An element of some GF(2^m), as bits over the polynomial basis.
///
/// The associated [`FieldCtx`] is carried by the caller; all arithmetic
/// goes through context methods.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn from_bits(bits: u64) -> Fe {
        Fe(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Fe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Carry-less product of two bit-polynomials (degrees below 64, result below 128 bits).
fn clmul(a: u64, b: u64) -> u128 {
    let mut acc: u128 = 0;
    let mut b = b;
    let mut shift = 0u32;
    while b != 0 {
        let tz = b.trailing_zeros();
        shift += tz;
        acc ^= (a as u128) << shift;
        b >>= tz + 1;
        shift += 1;
    }
    acc
}

/// Reduce a bit-polynomial modulo `modulus` of degree `m`.
fn reduce(mut v: u128, modulus: u64, m: u32) -> u64 {
    while v >> m != 0 {
        let d = 127 - v.leading_zeros();
        v ^= (modulus as u128) << (d - m);
    }
    v as u64
}

/// Degree of a nonzero bit-polynomial.
fn degree(v: u64) -> u32 {
    63 - v.leading_zeros()
}

/// A concrete binary field GF(2^m) with a fixed irreducible modulus.
#[derive(Debug)]
pub struct FieldCtx {
    m: u32,
    modulus: u64,
    q: u64,
    generator: OnceLock<Fe>,
}

impl Clone for FieldCtx {
    fn clone(&self) -> Self {
        FieldCtx {
            m: self.m,
            modulus: self.modulus,
            q: self.q,
            generator: self.generator.clone(),
        }
    }
}

impl FieldCtx {
    /// Build GF(2^m) with the smallest irreducible modulus of degree m.
    pub fn new(m: u32) -> Result<FieldCtx> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        Self::with_modulus(m, MODULUS_TABLE[(m - 1) as usize])
    }

    /// Build GF(2^m) with a caller-supplied modulus, checked for degree and irreducibility.
    pub fn with_modulus(m: u32, modulus: u64) -> Result<FieldCtx> {
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        if modulus >> m != 1 || !is_irreducible(modulus, m) {
            return Err(Error::ReducibleModulus(modulus, m));
        }
        Ok(FieldCtx {
            m,
            modulus,
            q: 1u64 << m,
            generator: OnceLock::new(),
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Field size 2^m.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn units_order(&self) -> u64 {
        self.q - 1
    }

    pub fn contains(&self, x: Fe) -> bool {
        x.0 < self.q
    }

    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        debug_assert!(self.contains(x) && self.contains(y));
        Fe(x.0 ^ y.0)
    }

    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        debug_assert!(self.contains(x) && self.contains(y));
        Fe(reduce(clmul(x.0, y.0), self.modulus, self.m))
    }

    pub fn sqr(&self, x: Fe) -> Fe {
        self.mul(x, x)
    }

    pub fn inv(&self, x: Fe) -> Result<Fe> {
        if x.is_zero() {
            return Err(Error::InvertZero);
        }
        Ok(self.pow_u64(x, self.q - 2))
    }

    /// Square-and-multiply with a machine-word exponent (no reduction of e).
    pub fn pow_u64(&self, x: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if x.is_zero() {
            return Fe::ZERO;
        }
        let mut acc = Fe::ONE;
        let mut base = x;
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            e >>= 1;
        }
        acc
    }

    /// Exponentiation with an arbitrary-precision exponent; for x != 0 the
    /// exponent is reduced modulo q - 1 first. 0^0 is defined as 1.
    pub fn pow(&self, x: Fe, e: &BigUint) -> Fe {
        if e.bits() == 0 {
            return Fe::ONE;
        }
        if x.is_zero() {
            return Fe::ZERO;
        }
        let r = (e % BigUint::from(self.units_order())).to_u64().unwrap();
        self.pow_u64(x, r)
    }

    /// All field elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    /// All nonzero elements in bit order.
    pub fn units(&self) -> impl Iterator<Item = Fe> {
        (1..self.q).map(Fe)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, x: Fe) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::InvertZero);
        }
        let mut ord = self.units_order();
        for p in prime_factors(self.units_order()) {
            while ord % p == 0 && self.pow_u64(x, ord / p) == Fe::ONE {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Smallest-bits generator of the multiplicative group.
    pub fn generator(&self) -> Fe {
        *self.generator.get_or_init(|| {
            let n = self.units_order();
            let facs = prime_factors(n);
            self.units()
                .find(|&g| facs.iter().all(|&p| self.pow_u64(g, n / p) != Fe::ONE))
                .expect("the multiplicative group of a finite field is cyclic")
        })
    }

    /// Smallest-bits element of multiplicative order exactly n; n must divide q - 1.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<Fe> {
        let order = self.units_order();
        if n == 0 || order % n != 0 {
            return Err(Error::NotADivisor { n, order });
        }
        let facs = prime_factors(n);
        Ok(self
            .units()
            .find(|&x| {
                self.pow_u64(x, n) == Fe::ONE
                    && facs.iter().all(|&p| self.pow_u64(x, n / p) != Fe::ONE)
            })
            .expect("a cyclic group of order q-1 has elements of every dividing order"))
    }
}

/// Irreducibility over GF(2): f of degree m is irreducible iff
/// x^(2^m) = x in GF(2)[x]/(f) and x^(2^i) != x for 0 < i < m.
pub fn is_irreducible(modulus: u64, m: u32) -> bool {
    if modulus >> m != 1 || m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    // Repeatedly square x in the quotient ring.
    let mut t: u64 = 0b10;
    for _ in 0..m - 1 {
        t = reduce(clmul(t, t), modulus, m);
        if t == 0b10 {
            return false;
        }
    }
    reduce(clmul(t, t), modulus, m) == 0b10
}

/// Irreducible polynomials of degree m in ascending bit order.
pub fn irreducible_moduli(m: u32) -> impl Iterator<Item = u64> {
    let lo = 1u64 << m;
    let hi = 1u64 << (m + 1);
    (lo..hi).filter(move |&c| c & 1 == 1 && is_irreducible(c, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The quadratic tower GF(2^m) inside GF(2^{2m}), with the subfield embedding,
/// conjugation x -> x^(2^m), and the subgroup mu_(q+1) of (q+1)-th roots of unity.
#[derive(Debug, Clone)]
pub struct TowerCtx {
    base: FieldCtx,
    ext: FieldCtx,
    /// Powers r^0..r^(m-1) in the extension, where r is the smallest-bits
    /// root of the base modulus there; embedding maps bit i to r^i.
    embed_pows: Vec<Fe>,
}

impl TowerCtx {
    pub fn new(m: u32) -> Result<TowerCtx> {
        if m == 0 || 2 * m > MAX_DEGREE {
            return Err(Error::UnsupportedDegree(m));
        }
        Self::with_fields(FieldCtx::new(m)?, FieldCtx::new(2 * m)?)
    }

    pub fn with_fields(base: FieldCtx, ext: FieldCtx) -> Result<TowerCtx> {
        if ext.m() != 2 * base.m() {
            return Err(Error::BadParameter(format!(
                "extension degree {} is not twice the base degree {}",
                ext.m(),
                base.m()
            )));
        }
        let m = base.m();
        // The roots of the base modulus lie in the order-(q-1) subgroup of ext;
        // scan it for the smallest-bits root.
        let g = ext.generator();
        let cofactor = ext.units_order() / base.units_order();
        let h = ext.pow_u64(g, cofactor);
        let mut subfield: Vec<Fe> = std::iter::successors(Some(Fe::ONE), |&x| {
            let nx = ext.mul(x, h);
            (nx != Fe::ONE).then_some(nx)
        })
        .collect();
        subfield.sort_unstable();
        let root = subfield
            .into_iter()
            .find(|&r| eval_gf2_poly(&ext, base.modulus(), r).is_zero())
            .expect("an irreducible polynomial of degree m splits in GF(2^2m)");
        let mut embed_pows = Vec::with_capacity(m as usize);
        let mut p = Fe::ONE;
        for _ in 0..m {
            embed_pows.push(p);
            p = ext.mul(p, root);
        }
        Ok(TowerCtx {
            base,
            ext,
            embed_pows,
        })
    }

    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn ext(&self) -> &FieldCtx {
        &self.ext
    }

    /// Base field size 2^m.
    pub fn q(&self) -> u64 {
        self.base.q()
    }

    /// Embed a base-field element into the extension.
    pub fn embed(&self, x: Fe) -> Fe {
        debug_assert!(self.base.contains(x));
        let mut acc = Fe::ZERO;
        let mut bits = x.bits();
        while bits != 0 {
            let i = bits.trailing_zeros();
            acc = self.ext.add(acc, self.embed_pows[i as usize]);
            bits &= bits - 1;
        }
        acc
    }

    /// Conjugation x -> x^(2^m) on the extension.
    pub fn conj(&self, x: Fe) -> Fe {
        let mut t = x;
        for _ in 0..self.base.m() {
            t = self.ext.sqr(t);
        }
        t
    }

    /// Whether an extension element lies in the embedded subfield.
    pub fn in_subfield(&self, x: Fe) -> bool {
        self.conj(x) == x
    }

    /// All (q+1)-th roots of unity in the extension, in ascending bit order.
    pub fn enumerate_mu(&self) -> Vec<Fe> {
        let n = self.q() + 1;
        let w = self
            .ext
            .primitive_root_of_unity(n)
            .expect("q+1 divides q^2-1");
        let mut mu: Vec<Fe> = std::iter::successors(Some(Fe::ONE), |&x| {
            let nx = self.ext.mul(x, w);
            (nx != Fe::ONE).then_some(nx)
        })
        .collect();
        debug_assert_eq!(mu.len() as u64, n);
        mu.sort_unstable();
        mu
    }

    /// Whether an extension element lies in mu_(q+1).
    pub fn in_mu(&self, x: Fe) -> bool {
        !x.is_zero() && self.ext.pow_u64(x, self.q() + 1) == Fe::ONE
    }
}

/// Evaluate a GF(2)-coefficient polynomial (bit mask) at a point of `ctx`.
fn eval_gf2_poly(ctx: &FieldCtx, mask: u64, x: Fe) -> Fe {
    let mut acc = Fe::ZERO;
    for i in (0..=degree(mask)).rev() {
        acc = ctx.mul(acc, x);
        if (mask >> i) & 1 == 1 {
            acc = ctx.add(acc, Fe::ONE);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::RandBigInt;
    use rand::SeedableRng;

    #[test]
    fn modulus_table_entries_are_minimal_irreducibles() {
        for m in 1..=MAX_DEGREE.min(16) {
            let expect = irreducible_moduli(m).next().unwrap();
            assert_eq!(MODULUS_TABLE[(m - 1) as usize], expect, "degree {m}");
        }
    }

    #[test]
    fn make_field_basics() {
        let f1 = FieldCtx::new(1).unwrap();
        assert_eq!(f1.modulus(), 0b11);
        assert_eq!(f1.q(), 2);
        assert_eq!(FieldCtx::new(3).unwrap().q(), 8);
        assert!(FieldCtx::new(0).is_err());
        assert!(FieldCtx::new(25).is_err());
    }

    #[test]
    fn modulus_override() {
        assert!(FieldCtx::with_modulus(4, 0b10011).is_ok());
        assert!(FieldCtx::with_modulus(4, 0b11111).is_ok());
        // (x^2+x+1)^2
        assert!(matches!(
            FieldCtx::with_modulus(4, 0b10101),
            Err(Error::ReducibleModulus(..))
        ));
        // wrong degree
        assert!(FieldCtx::with_modulus(4, 0b111).is_err());
    }

    #[test]
    fn gf4_multiplication() {
        let f = FieldCtx::with_modulus(2, 0b111).unwrap();
        assert_eq!(f.mul(Fe::from_bits(0b10), Fe::from_bits(0b10)), Fe::from_bits(0b11));
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for m in 1..=8 {
            let f = FieldCtx::new(m).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, x), Fe::ZERO);
                for y in f.elements() {
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for z in [Fe::ZERO, Fe::ONE, Fe::from_bits(f.q() - 1)] {
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_axiom() {
        for m in [1, 2, 3, 5, 8] {
            let f = FieldCtx::new(m).unwrap();
            for x in f.units() {
                assert_eq!(f.mul(x, f.inv(x).unwrap()), Fe::ONE);
            }
            assert!(matches!(f.inv(Fe::ZERO), Err(Error::InvertZero)));
        }
    }

    #[test]
    fn pow_reduces_big_exponents() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for m in [3u32, 5, 8] {
            let f = FieldCtx::new(m).unwrap();
            for _ in 0..1000 {
                let e = rng.gen_biguint(96);
                let r = (&e % BigUint::from(f.units_order())).to_u64().unwrap();
                for x in [Fe::ONE, Fe::from_bits(2), Fe::from_bits(f.q() - 1)] {
                    assert_eq!(f.pow(x, &e), f.pow_u64(x, r));
                }
            }
            for x in f.units() {
                assert_eq!(f.pow_u64(x, f.units_order()), Fe::ONE);
            }
            assert_eq!(f.pow(Fe::ZERO, &BigUint::from(5u8)), Fe::ZERO);
            assert_eq!(f.pow(Fe::ZERO, &BigUint::from(0u8)), Fe::ONE);
        }
    }

    #[test]
    fn frobenius_properties() {
        for m in 1..=8u32 {
            let t = TowerCtx::new(m).unwrap();
            let ext = t.ext();
            for x in ext.elements() {
                let c = t.conj(x);
                assert_eq!(t.conj(c), x);
                assert!(t.in_subfield(ext.mul(x, c)));
                assert!(t.in_subfield(ext.add(x, c)));
                assert_eq!(t.in_subfield(x), t.conj(x) == x);
                for y in [Fe::ZERO, Fe::ONE, Fe::from_bits(ext.q() / 2)] {
                    assert_eq!(t.conj(ext.add(x, y)), ext.add(t.conj(x), t.conj(y)));
                    assert_eq!(t.conj(ext.mul(x, y)), ext.mul(t.conj(x), t.conj(y)));
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_field_homomorphism() {
        for m in 1..=6u32 {
            let t = TowerCtx::new(m).unwrap();
            let b = t.base();
            let e = t.ext();
            for x in b.elements() {
                assert!(t.in_subfield(t.embed(x)));
                for y in b.elements() {
                    assert_eq!(t.embed(b.add(x, y)), e.add(t.embed(x), t.embed(y)));
                    assert_eq!(t.embed(b.mul(x, y)), e.mul(t.embed(x), t.embed(y)));
                }
            }
            // image is exactly the fixed set of conjugation
            let image: std::collections::BTreeSet<Fe> = b.elements().map(|x| t.embed(x)).collect();
            let fixed: std::collections::BTreeSet<Fe> =
                e.elements().filter(|&x| t.in_subfield(x)).collect();
            assert_eq!(image, fixed);
        }
    }

    #[test]
    fn conj_is_pow_2m() {
        let t = TowerCtx::new(3).unwrap();
        let e = t.ext();
        let big = BigUint::from(1u64 << 3);
        for x in e.elements() {
            assert_eq!(t.conj(x), e.pow(x, &big));
        }
    }

    #[test]
    fn mu_subgroup() {
        for m in 1..=6u32 {
            let t = TowerCtx::new(m).unwrap();
            let mu = t.enumerate_mu();
            assert_eq!(mu.len() as u64, t.q() + 1);
            let set: std::collections::BTreeSet<Fe> = mu.iter().copied().collect();
            let e = t.ext();
            for &x in &mu {
                assert_eq!(e.pow_u64(x, t.q() + 1), Fe::ONE);
                assert!(set.contains(&e.inv(x).unwrap()));
                for &y in &mu {
                    assert!(set.contains(&e.mul(x, y)));
                }
            }
        }
    }

    #[test]
    fn mu_of_gf4_is_all_units() {
        let t = TowerCtx::new(1).unwrap();
        let mu = t.enumerate_mu();
        assert_eq!(mu, vec![Fe::from_bits(1), Fe::from_bits(2), Fe::from_bits(3)]);
    }

    #[test]
    fn primitive_roots() {
        let f4 = FieldCtx::new(2).unwrap();
        assert_eq!(f4.primitive_root_of_unity(1).unwrap(), Fe::ONE);
        let w = f4.primitive_root_of_unity(3).unwrap();
        assert_ne!(w, Fe::ONE);
        assert_eq!(f4.pow_u64(w, 3), Fe::ONE);
        // w^2 + w + 1 = 0
        assert_eq!(f4.add(f4.add(f4.sqr(w), w), Fe::ONE), Fe::ZERO);

        let f8 = FieldCtx::new(3).unwrap();
        assert!(matches!(
            f8.primitive_root_of_unity(3),
            Err(Error::NotADivisor { .. })
        ));
    }

    #[test]
    fn order_of_generator() {
        for m in [2u32, 3, 4, 6, 10] {
            let f = FieldCtx::new(m).unwrap();
            assert_eq!(f.order_of(f.generator()).unwrap(), f.units_order());
        }
    }
}
