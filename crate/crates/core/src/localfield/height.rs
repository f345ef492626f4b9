//! The height function on tuples of rational coordinates: the maximum over
//! coordinates of the sizes of reduced numerators and denominators. In
//! characteristic p the size of a nonzero polynomial is q^{deg}; in
//! characteristic 0 it is the archimedean magnitude of the integer.

use std::fmt;

use crate::localfield::ratfn::RationalFn;
use crate::localfield::ratnum::RationalNum;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Height(pub u128);

impl Height {
    pub fn value(&self) -> u128 {
        self.0
    }
}

impl fmt::Display for Height {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{}", self.0)
    }
}

/// Height of a tuple over F_q(T). The empty tuple and all-zero tuples have
/// height 1 (each coordinate contributes max(|0|, |1|) = 1).
pub fn height_fn(coords: &[RationalFn]) -> Height {
    let mut h: u128 = 1;
    for z in coords {
        h = h.max(z.size_num()).max(z.size_den());
    }
    Height(h)
}

/// Height of a tuple over Q.
pub fn height_num(coords: &[RationalNum]) -> Height {
    let mut h: u128 = 1;
    for z in coords {
        h = h.max(z.size_num()).max(z.size_den());
    }
    Height(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localfield::fq::FqTable;
    use crate::localfield::fqpoly::FqPoly;

    #[test]
    fn spec_examples() {
        let f2 = FqTable::get(2).unwrap();
        // H(0) = 1
        assert_eq!(height_fn(&[RationalFn::zero(f2)]).value(), 1);
        // H(T/(T+1)) = 2
        let x = RationalFn::new(FqPoly::t(f2), FqPoly::from_ints(f2, &[1, 1])).unwrap();
        assert_eq!(height_fn(&[x]).value(), 2);
        // H((T^2+1)/T, 1/T^3) = 8
        let a = RationalFn::new(FqPoly::from_ints(f2, &[1, 0, 1]), FqPoly::t(f2)).unwrap();
        let b = RationalFn::new(FqPoly::one(f2), FqPoly::t_pow(f2, 3)).unwrap();
        assert_eq!(height_fn(&[a, b]).value(), 8);
    }

    #[test]
    fn inversion_symmetry() {
        let f3 = FqTable::get(3).unwrap();
        let x = RationalFn::new(FqPoly::from_ints(f3, &[1, 2, 1]), FqPoly::t(f3)).unwrap();
        let h = height_fn(&[x.clone()]);
        let hinv = height_fn(&[x.inv().unwrap()]);
        assert_eq!(h, hinv);
    }

    #[test]
    fn char0_examples() {
        assert_eq!(height_num(&[RationalNum::zero()]).value(), 1);
        let x = RationalNum::new(3.into(), 7.into()).unwrap();
        assert_eq!(height_num(&[x.clone()]).value(), 7);
        assert_eq!(height_num(&[x.inv().unwrap()]).value(), 7);
    }
}
