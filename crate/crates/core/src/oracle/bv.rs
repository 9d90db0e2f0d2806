//! Fixed-width bit-vector values with SMT-LIB semantics.
//!
//! Two independent implementations back the oracle: word-level modular
//! arithmetic on `u128` (the primary), and a naive bit-array implementation
//! used as a cross-check so a single buggy oracle cannot certify itself.

use crate::ast::{BvBinop, BvRel, BvUnop};

/// An unsigned value `nat` in `[0, 2^width)` with `1 <= width <= 64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BvValue {
    width: u32,
    nat: u128,
}

impl BvValue {
    pub fn new(width: u32, nat: u128) -> BvValue {
        assert!((1..=64).contains(&width), "width {width} out of range");
        BvValue {
            width,
            nat: nat & mask(width),
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// The unsigned interpretation `[.]_N`.
    pub fn to_nat(&self) -> u128 {
        self.nat
    }

    /// The two's-complement interpretation `[.]_Z`:
    /// `-msb * 2^(w-1) + [low bits]_N`.
    pub fn to_int(&self) -> i128 {
        let sign = 1u128 << (self.width - 1);
        if self.nat & sign != 0 {
            self.nat as i128 - (1i128 << self.width)
        } else {
            self.nat as i128
        }
    }

    pub fn bit(&self, i: u32) -> bool {
        debug_assert!(i < self.width);
        (self.nat >> i) & 1 == 1
    }

    pub fn all_ones(width: u32) -> BvValue {
        BvValue::new(width, mask(width))
    }

    pub fn unop(op: BvUnop, a: BvValue) -> BvValue {
        let m = mask(a.width);
        let nat = match op {
            BvUnop::Not => !a.nat & m,
            BvUnop::Neg => a.nat.wrapping_neg() & m,
        };
        BvValue {
            width: a.width,
            nat,
        }
    }

    pub fn binop(op: BvBinop, a: BvValue, b: BvValue) -> BvValue {
        if op == BvBinop::Concat {
            let width = a.width + b.width;
            assert!(width <= 64, "concat width {width} exceeds 64");
            return BvValue {
                width,
                nat: (a.nat << b.width) | b.nat,
            };
        }
        assert_eq!(a.width, b.width, "operand widths differ");
        let w = a.width;
        let m = mask(w);
        let nat = match op {
            BvBinop::And => a.nat & b.nat,
            BvBinop::Or => a.nat | b.nat,
            BvBinop::Xor => a.nat ^ b.nat,
            BvBinop::Add => (a.nat + b.nat) & m,
            BvBinop::Mul => a.nat.wrapping_mul(b.nat) & m,
            // bvudiv x 0 = all ones, bvurem x 0 = x.
            BvBinop::Udiv => {
                if b.nat == 0 {
                    m
                } else {
                    a.nat / b.nat
                }
            }
            BvBinop::Urem => {
                if b.nat == 0 {
                    a.nat
                } else {
                    a.nat % b.nat
                }
            }
            BvBinop::Shl => {
                if b.nat >= u128::from(w) {
                    0
                } else {
                    (a.nat << b.nat) & m
                }
            }
            BvBinop::Lshr => {
                if b.nat >= u128::from(w) {
                    0
                } else {
                    a.nat >> b.nat
                }
            }
            BvBinop::Ashr => {
                let sh = b.nat.min(u128::from(w)) as u32;
                let signed = a.to_int() >> sh.min(127);
                (signed as u128) & m
            }
            BvBinop::Concat => unreachable!(),
        };
        BvValue { width: w, nat }
    }

    pub fn extract(hi: u32, lo: u32, a: BvValue) -> BvValue {
        assert!(lo <= hi && hi < a.width);
        BvValue::new(hi - lo + 1, a.nat >> lo)
    }

    pub fn rel(rel: BvRel, a: BvValue, b: BvValue) -> bool {
        assert_eq!(a.width, b.width);
        match rel {
            BvRel::Ult => a.nat < b.nat,
            BvRel::Ugt => a.nat > b.nat,
            BvRel::Ule => a.nat <= b.nat,
            BvRel::Uge => a.nat >= b.nat,
            BvRel::Slt => a.to_int() < b.to_int(),
            BvRel::Sgt => a.to_int() > b.to_int(),
            BvRel::Sle => a.to_int() <= b.to_int(),
            BvRel::Sge => a.to_int() >= b.to_int(),
        }
    }
}

fn mask(width: u32) -> u128 {
    if width >= 128 {
        u128::MAX
    } else {
        (1u128 << width) - 1
    }
}

// ---------------------------------------------------------------------------
// Bit-array implementation (cross-check)
// ---------------------------------------------------------------------------

/// A bit-vector as a vector of bits, index 0 being the least significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bits(pub Vec<bool>);

impl Bits {
    pub fn from_value(v: BvValue) -> Bits {
        Bits((0..v.width()).map(|i| v.bit(i)).collect())
    }

    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// The defining sum of the unsigned interpretation.
    pub fn to_nat(&self) -> u128 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { 1u128 << i } else { 0 })
            .sum()
    }

    fn zero(width: usize) -> Bits {
        Bits(vec![false; width])
    }

    fn not(&self) -> Bits {
        Bits(self.0.iter().map(|b| !b).collect())
    }

    fn add(&self, other: &Bits) -> Bits {
        let mut out = Vec::with_capacity(self.width());
        let mut carry = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a ^ b ^ carry);
            carry = (a & b) | (carry & (a ^ b));
        }
        Bits(out)
    }

    fn neg(&self) -> Bits {
        let mut one = Bits::zero(self.width());
        one.0[0] = true;
        self.not().add(&one)
    }

    fn shl_by(&self, sh: usize) -> Bits {
        let w = self.width();
        let mut out = vec![false; w];
        for i in sh..w {
            out[i] = self.0[i - sh];
        }
        Bits(out)
    }

    fn lshr_by(&self, sh: usize) -> Bits {
        let w = self.width();
        let mut out = vec![false; w];
        for i in 0..w.saturating_sub(sh) {
            out[i] = self.0[i + sh];
        }
        Bits(out)
    }

    fn ashr_by(&self, sh: usize) -> Bits {
        let w = self.width();
        let sign = self.0[w - 1];
        let mut out = vec![sign; w];
        for i in 0..w.saturating_sub(sh) {
            out[i] = self.0[i + sh];
        }
        Bits(out)
    }

    fn mul(&self, other: &Bits) -> Bits {
        let w = self.width();
        let mut acc = Bits::zero(w);
        for i in 0..w {
            if other.0[i] {
                acc = acc.add(&self.shl_by(i));
            }
        }
        acc
    }

    fn ult(&self, other: &Bits) -> bool {
        for i in (0..self.width()).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i];
            }
        }
        false
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !b)
    }

    /// Restoring long division; returns (quotient, remainder). Division by
    /// zero follows SMT-LIB: quotient all ones, remainder the dividend.
    fn divmod(&self, other: &Bits) -> (Bits, Bits) {
        let w = self.width();
        if other.is_zero() {
            return (Bits(vec![true; w]), self.clone());
        }
        // One extra working bit so the shifted remainder never overflows.
        let mut rem = vec![false; w + 1];
        let mut quo = vec![false; w];
        let div: Vec<bool> = other
            .0
            .iter()
            .copied()
            .chain(std::iter::once(false))
            .collect();
        let geq = |a: &[bool], b: &[bool]| -> bool {
            for i in (0..a.len()).rev() {
                if a[i] != b[i] {
                    return a[i];
                }
            }
            true
        };
        let sub_in_place = |a: &mut [bool], b: &[bool]| {
            let mut borrow = false;
            for i in 0..a.len() {
                let d = a[i] ^ b[i] ^ borrow;
                borrow = (!a[i] & b[i]) | (!(a[i] ^ b[i]) & borrow);
                a[i] = d;
            }
        };
        for i in (0..w).rev() {
            for j in (1..=w).rev() {
                rem[j] = rem[j - 1];
            }
            rem[0] = self.0[i];
            if geq(&rem, &div) {
                sub_in_place(&mut rem, &div);
                quo[i] = true;
            }
        }
        rem.truncate(w);
        (Bits(quo), Bits(rem))
    }

    fn shift_amount(&self) -> usize {
        // Any amount >= width behaves like width.
        let w = self.width();
        let mut amount = 0usize;
        for (i, &b) in self.0.iter().enumerate() {
            if b {
                if i >= usize::BITS as usize - 1 || (1usize << i) >= w {
                    return w;
                }
                amount += 1 << i;
            }
        }
        amount.min(w)
    }

    pub fn unop(op: BvUnop, a: &Bits) -> Bits {
        match op {
            BvUnop::Not => a.not(),
            BvUnop::Neg => a.neg(),
        }
    }

    pub fn binop(op: BvBinop, a: &Bits, b: &Bits) -> Bits {
        match op {
            BvBinop::And => Bits(a.0.iter().zip(&b.0).map(|(x, y)| x & y).collect()),
            BvBinop::Or => Bits(a.0.iter().zip(&b.0).map(|(x, y)| x | y).collect()),
            BvBinop::Xor => Bits(a.0.iter().zip(&b.0).map(|(x, y)| x ^ y).collect()),
            BvBinop::Add => a.add(b),
            BvBinop::Mul => a.mul(b),
            BvBinop::Udiv => a.divmod(b).0,
            BvBinop::Urem => a.divmod(b).1,
            BvBinop::Shl => a.shl_by(b.shift_amount()),
            BvBinop::Lshr => a.lshr_by(b.shift_amount()),
            BvBinop::Ashr => a.ashr_by(b.shift_amount()),
            BvBinop::Concat => Bits(b.0.iter().copied().chain(a.0.iter().copied()).collect()),
        }
    }

    pub fn extract(hi: u32, lo: u32, a: &Bits) -> Bits {
        Bits(a.0[lo as usize..=hi as usize].to_vec())
    }

    pub fn rel(rel: BvRel, a: &Bits, b: &Bits) -> bool {
        let w = a.width();
        let (sa, sb) = (a.0[w - 1], b.0[w - 1]);
        match rel {
            BvRel::Ult => a.ult(b),
            BvRel::Ugt => b.ult(a),
            BvRel::Ule => !b.ult(a),
            BvRel::Uge => !a.ult(b),
            // Signed order: a negative sign bit sorts first; equal signs
            // compare like unsigned values.
            BvRel::Slt => (sa && !sb) || (sa == sb && a.ult(b)),
            BvRel::Sgt => Bits::rel(BvRel::Slt, b, a),
            BvRel::Sle => !Bits::rel(BvRel::Slt, b, a),
            BvRel::Sge => !Bits::rel(BvRel::Slt, a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_addition() {
        let a = BvValue::new(3, 5);
        let b = BvValue::new(3, 6);
        assert_eq!(BvValue::binop(BvBinop::Add, a, b).to_nat(), 3);
    }

    #[test]
    fn and_with_zero_annihilates() {
        for k in 1..=5u32 {
            for x in 0..(1u128 << k) {
                let v = BvValue::binop(BvBinop::And, BvValue::new(k, x), BvValue::new(k, 0));
                assert_eq!(v.to_nat(), 0);
            }
        }
    }

    #[test]
    fn signed_comparison_at_width_4() {
        // 12 encodes -4, which is below 3.
        let a = BvValue::new(4, 12);
        let b = BvValue::new(4, 3);
        assert!(BvValue::rel(BvRel::Slt, a, b));
        assert_eq!(a.to_int(), -4);
    }

    #[test]
    fn division_by_zero_follows_smtlib() {
        let x = BvValue::new(4, 9);
        let z = BvValue::new(4, 0);
        assert_eq!(BvValue::binop(BvBinop::Udiv, x, z).to_nat(), 15);
        assert_eq!(BvValue::binop(BvBinop::Urem, x, z).to_nat(), 9);
    }

    #[test]
    fn shifts_saturate_at_the_width() {
        let x = BvValue::new(4, 0b1011);
        let big = BvValue::new(4, 9);
        assert_eq!(BvValue::binop(BvBinop::Shl, x, big).to_nat(), 0);
        assert_eq!(BvValue::binop(BvBinop::Lshr, x, big).to_nat(), 0);
        assert_eq!(BvValue::binop(BvBinop::Ashr, x, big).to_nat(), 0b1111);
    }

    #[test]
    fn to_nat_to_int_identities() {
        for k in 1..=8u32 {
            for nat in 0..(1u128 << k) {
                let v = BvValue::new(k, nat);
                assert_eq!(v.to_nat(), nat);
                let i = v.to_int();
                // Sign-split identity.
                let low = if k == 1 {
                    0
                } else {
                    BvValue::extract(k - 2, 0, v).to_nat() as i128
                };
                let msb = if v.bit(k - 1) { 1i128 } else { 0 };
                assert_eq!(i, -msb * (1i128 << (k - 1)) + low);
                // Round trip through the signed interpretation.
                assert_eq!((i.rem_euclid(1i128 << k)) as u128, nat);
            }
        }
    }

    /// The two implementations agree on every operator for widths up to 5.
    #[test]
    fn word_level_agrees_with_bit_arrays() {
        for k in 1..=5u32 {
            for x in 0..(1u128 << k) {
                let vx = BvValue::new(k, x);
                let bx = Bits::from_value(vx);
                for op in [BvUnop::Not, BvUnop::Neg] {
                    assert_eq!(
                        BvValue::unop(op, vx).to_nat(),
                        Bits::unop(op, &bx).to_nat(),
                        "{op:?} k={k} x={x}"
                    );
                }
                for y in 0..(1u128 << k) {
                    let vy = BvValue::new(k, y);
                    let by = Bits::from_value(vy);
                    for op in BvBinop::ALL {
                        if op == BvBinop::Concat {
                            continue;
                        }
                        assert_eq!(
                            BvValue::binop(op, vx, vy).to_nat(),
                            Bits::binop(op, &bx, &by).to_nat(),
                            "{op:?} k={k} x={x} y={y}"
                        );
                    }
                    for rel in BvRel::ALL {
                        assert_eq!(
                            BvValue::rel(rel, vx, vy),
                            Bits::rel(rel, &bx, &by),
                            "{rel:?} k={k} x={x} y={y}"
                        );
                    }
                }
            }
        }
        // Concat across mixed widths.
        for k1 in 1..=3u32 {
            for k2 in 1..=3u32 {
                for x in 0..(1u128 << k1) {
                    for y in 0..(1u128 << k2) {
                        let vx = BvValue::new(k1, x);
                        let vy = BvValue::new(k2, y);
                        assert_eq!(
                            BvValue::binop(BvBinop::Concat, vx, vy).to_nat(),
                            Bits::binop(
                                BvBinop::Concat,
                                &Bits::from_value(vx),
                                &Bits::from_value(vy)
                            )
                            .to_nat()
                        );
                    }
                }
            }
        }
    }
}
