use crate::body::{make_circle_kgon_intersection, ConvexBody};
use crate::error::{Error, Result};
use crate::geometry::{Polyline, Tolerance};
use crate::scalar::Scalar;
use crate::subdivision::KPartition;

fn require_symmetry<T: Scalar>(c: &ConvexBody<T>, k: usize, tol: &Tolerance<T>) -> Result<()> {
    if k < 2 || !c.verify_symmetry(k, tol) {
        return Err(Error::NotSymmetric { k });
    }
    Ok(())
}

/// k inradius segments from the center, 2pi/k apart. The first endpoint is
/// the boundary point nearest to the center (first piece wins ties).
pub fn standard_partition<T: Scalar>(
    c: &ConvexBody<T>,
    k: usize,
    tol: &Tolerance<T>,
) -> Result<KPartition<T>> {
    if k < 3 {
        return Err(Error::param("k", "standard partitions need k >= 3"));
    }
    require_symmetry(c, k, tol)?;
    let p = c.center();
    let x1 = c.nearest_boundary_point(p);
    let step = T::TAU() / T::from_usize_lossy(k);
    let curves = (0..k)
        .map(|i| {
            let x = if i == 0 {
                x1
            } else {
                x1.rotate_about(p, step * T::from_usize_lossy(i))
            };
            Polyline::new(vec![p, x], tol)
        })
        .collect::<Result<Vec<_>>>()?;
    KPartition::new(c.clone(), p, curves, tol)
}

/// `max{R, 2 r sin(pi/k)}`.
pub fn d_m_standard_formula<T: Scalar>(
    c: &ConvexBody<T>,
    k: usize,
    tol: &Tolerance<T>,
) -> Result<T> {
    require_symmetry(c, k, tol)?;
    let m = c.metrics();
    let chord = T::lit(2.0) * m.inradius * (T::PI() / T::from_usize_lossy(k)).sin();
    Ok(m.circumradius.max(chord))
}

/// The unit disc intersected with the regular k-gon of inradius `1/(2 sin(pi/k))`.
pub fn optimal_body<T: Scalar>(k: usize) -> Result<ConvexBody<T>> {
    if k < 3 {
        return Err(Error::param("k", "optimal bodies are defined for k >= 3"));
    }
    let a = T::one() / (T::lit(2.0) * (T::PI() / T::from_usize_lossy(k)).sin());
    make_circle_kgon_intersection(k, a, T::one())
}

/// `d_M(P_k)^2 / A`, the dilation-invariant quality of a body.
pub fn quotient<T: Scalar>(c: &ConvexBody<T>, k: usize, tol: &Tolerance<T>) -> Result<T> {
    let d = d_m_standard_formula(c, k, tol)?;
    let a = c.area();
    if !(a > T::zero()) {
        return Err(Error::InvalidBody("zero area".into()));
    }
    Ok(d * d / a)
}
