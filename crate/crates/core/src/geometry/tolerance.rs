use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Global tolerance policy: one length tolerance and one area tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance<T> {
    pub eps_geom: T,
    pub eps_area: T,
}

impl<T: Scalar> Tolerance<T> {
    pub fn new(eps_geom: T, eps_area: T) -> Result<Self> {
        if !(eps_geom > T::zero() && eps_geom.is_finite()) {
            return Err(Error::param("eps_geom", "must be positive and finite"));
        }
        if !(eps_area > T::zero() && eps_area.is_finite()) {
            return Err(Error::param("eps_area", "must be positive and finite"));
        }
        Ok(Tolerance { eps_geom, eps_area })
    }

    /// Same area tolerance, different length tolerance.
    pub fn with_eps_geom(self, eps_geom: T) -> Result<Self> {
        Tolerance::new(eps_geom, self.eps_area)
    }

    /// Angular tolerance matching `eps_geom` on a circle of radius `r`.
    pub fn angle_on(&self, r: T) -> T {
        if r > T::zero() {
            self.eps_geom / r
        } else {
            self.eps_geom
        }
    }
}

impl<T: Scalar> Default for Tolerance<T> {
    fn default() -> Self {
        let e = T::lit(T::DEFAULT_EPS);
        Tolerance {
            eps_geom: e,
            eps_area: e,
        }
    }
}
