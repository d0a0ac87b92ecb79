use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fpmod::FpModule;
use crate::freealg::Arity;

use super::QgrClass;

/// An object of `qgr R`, always isomorphic to some `O(-i0)^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QgrObject {
    class: QgrClass,
    i0: i64,
    t: u64,
}

impl QgrObject {
    /// `O(-i0)^t`.
    pub fn from_witness(d: Arity, i0: i64, t: u64) -> Self {
        QgrObject { class: QgrClass::new(d, t, i0), i0, t }
    }

    /// `O(m)^r`.
    pub fn twisted_free(d: Arity, m: i64, r: u64) -> Self {
        Self::from_witness(d, -m, r)
    }

    pub fn structure_sheaf(d: Arity) -> Self {
        Self::twisted_free(d, 0, 1)
    }

    pub fn zero(d: Arity) -> Self {
        Self::twisted_free(d, 0, 0)
    }

    pub fn class(&self) -> QgrClass {
        self.class
    }

    pub fn arity(&self) -> Arity {
        self.class.arity()
    }

    /// `(i0, t_{i0})`, meaning `O(-i0)^{t_{i0}}`.
    pub fn witness(&self) -> (i64, u64) {
        (self.i0, self.t)
    }

    pub fn is_zero(&self) -> bool {
        self.class.is_zero()
    }

    pub fn is_isomorphic(&self, other: &QgrObject) -> bool {
        self.class == other.class
    }

    /// `F(m)`.
    pub fn twist(&self, m: i64) -> Self {
        QgrObject { class: self.class.twist(m), i0: self.i0 - m, t: self.t }
    }

    /// The `r` with `F ≅ O(i)^r`.
    pub fn decompose(&self, i: i64) -> Result<u64> {
        self.class.multiplicity_at(i).ok_or(Error::NotExpressibleAtTwist { twist: i })
    }

    /// `O(i)^r` with `r = decompose(i)`.
    pub fn at_twist(&self, i: i64) -> Result<Self> {
        Ok(Self::twisted_free(self.arity(), i, self.decompose(i)?))
    }

    /// `F ⊕ G`.
    pub fn direct_sum(&self, other: &QgrObject) -> Self {
        let class = self.class + other.class;
        let m = self.class.common_twist(&other.class);
        let r = class.multiplicity_at(-m).expect("common twist admits both summands");
        Self::from_witness(self.arity(), m, r)
    }
}

/// `π*M`, read off the stable profile.
pub fn pi_star<F: Field>(m: &FpModule<F>) -> QgrObject {
    let p = m.stable_profile();
    QgrObject::from_witness(m.arity(), p.i0, p.t_i0)
}
