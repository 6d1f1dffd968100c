//! Closed forms for restricted instance classes. Each one must agree with
//! the general formula on its domain; they are opt-in.

use super::{cos2, sin2, Angles, EdgeParts, ExpectationBreakdown, MixerFactors};
use crate::error::{Error, Result};
use crate::instance::{merge_neighbors, IsingInstance, NeighborClass};
use crate::scalar::{cos_r, sin_r, Scalar};

fn powi<T: Scalar>(x: T, k: usize) -> T {
    x.powi(i32::try_from(k).expect("exponent fits in i32"))
}

/// Unweighted Max-Cut edge (`h = 0`, every `J = −1`) from `d_i`, `d_j`, `f_ij`.
pub fn expect_edge_maxcut<T: Scalar>(
    instance: &IsingInstance<T>,
    e: usize,
    angles: Angles<T>,
) -> Result<T> {
    if instance.has_fields() || instance.uniform_coupling() != Some(-T::one()) {
        return Err(Error::Precondition(
            "Max-Cut form needs zero fields and every coupling equal to -1".into(),
        ));
    }
    let edge = instance.edge(e)?;
    let (d_i, d_j) = (instance.degree(edge.u), instance.degree(edge.v));
    let f = instance.shared_count(edge.u, edge.v);
    let gamma = angles.gamma;
    let two = T::lit(2.0);
    let c = cos_r(two * gamma);
    let c4 = cos_r(T::lit(4.0) * gamma);
    let m = MixerFactors::new(angles.beta);
    Ok(
        m.half_sin4 * sin_r(two * gamma) * (powi(c, d_i - 1) + powi(c, d_j - 1))
            - m.half_sin2_sq * powi(c, d_i + d_j - 2 * f - 2) * (T::one() - powi(c4, f)),
    )
}

/// The P5 problem (`h = 1` everywhere, every `J = 1`) from degrees and shared counts.
pub fn expect_p5<T: Scalar>(
    instance: &IsingInstance<T>,
    angles: Angles<T>,
) -> Result<ExpectationBreakdown<T>> {
    let unit_couplings = instance.num_edges() == 0 || instance.uniform_coupling() == Some(T::one());
    if instance.uniform_field() != Some(T::one()) || !unit_couplings {
        return Err(Error::Precondition(
            "P5 form needs every field and every coupling equal to 1".into(),
        ));
    }
    let two = T::lit(2.0);
    let gamma = angles.gamma;
    let c = cos_r(two * gamma);
    let s = sin_r(two * gamma);
    let c4 = cos_r(T::lit(4.0) * gamma);
    let m = MixerFactors::new(angles.beta);
    let vertex_terms = (0..instance.n())
        .map(|i| m.sin2 * s * powi(c, instance.degree(i)))
        .collect();
    let edge_terms = instance
        .edges()
        .iter()
        .map(|edge| {
            let (d_i, d_j) = (instance.degree(edge.u), instance.degree(edge.v));
            let f = instance.shared_count(edge.u, edge.v);
            m.half_sin4 * s * (powi(c, d_i) + powi(c, d_j))
                + m.half_sin2_sq * powi(c, d_i + d_j - 2 * f - 2) * (T::one() - powi(c4, f + 1))
        })
        .collect();
    Ok(ExpectationBreakdown::from_terms(vertex_terms, edge_terms))
}

/// Fields only: `<C_i> = h_i sin(2β) sin(2γh_i)` and no edge terms.
pub fn expect_field_only<T: Scalar>(
    instance: &IsingInstance<T>,
    angles: Angles<T>,
) -> Result<ExpectationBreakdown<T>> {
    if instance.num_edges() > 0 {
        return Err(Error::Precondition(format!(
            "field-only form needs an edgeless instance, found {} edges",
            instance.num_edges()
        )));
    }
    let s = sin_r(T::lit(2.0) * angles.beta);
    let vertex_terms = instance
        .fields()
        .iter()
        .map(|&h| h * s * sin2(angles.gamma, h))
        .collect();
    Ok(ExpectationBreakdown::from_terms(vertex_terms, Vec::new()))
}

/// Edge term when the endpoints share no neighbor.
pub fn expect_edge_triangle_free<T: Scalar>(
    instance: &IsingInstance<T>,
    e: usize,
    angles: Angles<T>,
) -> Result<T> {
    let edge = *instance.edge(e)?;
    let (i, j, coupling) = (edge.u, edge.v, edge.coupling);
    let gamma = angles.gamma;
    let product = |v: usize, skip: usize| {
        instance
            .neighbors(v)
            .iter()
            .filter(|nb| nb.vertex != skip)
            .fold(T::one(), |p, nb| p * cos2(gamma, nb.coupling))
    };
    let f = instance.shared_count(i, j);
    if f > 0 {
        return Err(Error::Precondition(format!(
            "edge ({i}, {j}) closes {f} triangle(s)"
        )));
    }
    let (p_i, p_j) = (product(i, j), product(j, i));
    let (h_i, h_j) = (instance.field(i), instance.field(j));
    let m = MixerFactors::new(angles.beta);
    let sin2_sq = m.sin2 * m.sin2;
    Ok(m.half_sin4
        * coupling
        * sin2(gamma, coupling)
        * (cos2(gamma, h_i) * p_i + cos2(gamma, h_j) * p_j)
        + coupling * sin2_sq * sin2(gamma, h_i) * sin2(gamma, h_j) * p_i * p_j)
}

/// Edge term with the instance padded to the complete graph (`J = 0` for
/// absent pairs). O(n) per edge; a cross-check path.
pub fn expect_edge_complete<T: Scalar>(
    instance: &IsingInstance<T>,
    e: usize,
    angles: Angles<T>,
) -> Result<T> {
    let edge = *instance.edge(e)?;
    let (i, j, coupling) = (edge.u, edge.v, edge.coupling);
    let gamma = angles.gamma;
    let zero = T::zero();
    let mut row_i = vec![zero; instance.n()];
    let mut row_j = vec![zero; instance.n()];
    merge_neighbors(
        instance.neighbors(i),
        instance.neighbors(j),
        |class| match class {
            NeighborClass::OnlyFirst(nb) => row_i[nb.vertex] = nb.coupling,
            NeighborClass::OnlySecond(nb) => row_j[nb.vertex] = nb.coupling,
            NeighborClass::Shared(a, b) => {
                row_i[a.vertex] = a.coupling;
                row_j[b.vertex] = b.coupling;
            }
        },
    );
    let one = T::one();
    let (mut p_i, mut p_j, mut plus, mut minus) = (one, one, one, one);
    for k in (0..instance.n()).filter(|&k| k != i && k != j) {
        let (a, b) = (row_i[k], row_j[k]);
        p_i = p_i * cos2(gamma, a);
        p_j = p_j * cos2(gamma, b);
        plus = plus * cos2(gamma, a + b);
        minus = minus * cos2(gamma, a - b);
    }
    let (h_i, h_j) = (instance.field(i), instance.field(j));
    let parts = EdgeParts {
        linear: coupling
            * sin2(gamma, coupling)
            * (cos2(gamma, h_i) * p_i + cos2(gamma, h_j) * p_j),
        quadratic: coupling * (cos2(gamma, h_i + h_j) * plus - cos2(gamma, h_i - h_j) * minus),
    };
    Ok(MixerFactors::new(angles.beta).edge(parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{expect_edge, expect_total};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    fn instance(n: usize, h: f64, j: f64, edges: &[(usize, usize)]) -> IsingInstance<f64> {
        IsingInstance::new(n, vec![h; n], edges.iter().map(|&(u, v)| (u, v, j))).unwrap()
    }

    #[test]
    fn maxcut_single_edge() {
        let g = instance(2, 0.0, -1.0, &[(0, 1)]);
        let down = expect_edge_maxcut(&g, 0, Angles::new(-FRAC_PI_8, FRAC_PI_4)).unwrap();
        assert_abs_diff_eq!(down, -1.0, epsilon = 1e-15);
        let up = expect_edge_maxcut(&g, 0, Angles::new(FRAC_PI_8, FRAC_PI_4)).unwrap();
        assert_abs_diff_eq!(up, 1.0, epsilon = 1e-15);
        assert_eq!(
            expect_edge_maxcut(&g, 0, Angles::new(0.4, 0.0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn maxcut_triangle_matches_general() {
        let g = instance(3, 0.0, -1.0, &[(0, 1), (1, 2), (0, 2)]);
        for k in 0..25 {
            let a = Angles::new(-0.7 + 0.06 * k as f64, 0.13 * k as f64);
            for e in 0..3 {
                let fast = expect_edge_maxcut(&g, e, a).unwrap();
                assert_abs_diff_eq!(fast, expect_edge(&g, e, a).unwrap(), epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn maxcut_rejects_other_weights() {
        let g = instance(2, 0.0, 1.0, &[(0, 1)]);
        assert!(matches!(
            expect_edge_maxcut(&g, 0, Angles::new(0.1, 0.2)),
            Err(Error::Precondition(_))
        ));
        let g = instance(2, 1.0, -1.0, &[(0, 1)]);
        assert!(expect_edge_maxcut(&g, 0, Angles::new(0.1, 0.2)).is_err());
    }

    #[test]
    fn p5_single_vertex_and_path() {
        let g = instance(1, 1.0, 1.0, &[]);
        let b = expect_p5(&g, Angles::new(FRAC_PI_4, FRAC_PI_4)).unwrap();
        assert_abs_diff_eq!(b.vertex_terms[0], 1.0, epsilon = 1e-15);

        let g = instance(3, 1.0, 1.0, &[(0, 1), (1, 2)]);
        for k in 0..20 {
            let a = Angles::new(0.9 - 0.11 * k as f64, 0.07 * k as f64 + 0.01);
            let fast = expect_p5(&g, a).unwrap();
            assert_abs_diff_eq!(fast.total, expect_total(&g, a).total, epsilon = 1e-14);
        }
        assert_eq!(expect_p5(&g, Angles::new(0.0, 0.3)).unwrap().total, 0.0);
        assert!(expect_p5(&instance(2, 1.0, -1.0, &[(0, 1)]), Angles::new(0.1, 0.1)).is_err());
    }

    #[test]
    fn field_only_cases() {
        let g = IsingInstance::new(1, vec![2.0], []).unwrap();
        let b = expect_field_only(&g, Angles::new(FRAC_PI_4, FRAC_PI_8)).unwrap();
        assert_abs_diff_eq!(b.total, 2.0, epsilon = 1e-15);

        let g = IsingInstance::new(2, vec![1.0, -1.0], []).unwrap();
        let b = expect_field_only(&g, Angles::new(0.3, 0.8)).unwrap();
        assert_eq!(b.vertex_terms[0], b.vertex_terms[1]);

        let g = IsingInstance::new(3, vec![1.0, 2.0, 3.0], []).unwrap();
        let a = Angles::new(-FRAC_PI_4, 0.3);
        assert_abs_diff_eq!(
            expect_field_only(&g, a).unwrap().total,
            expect_total(&g, a).total,
            epsilon = 1e-15
        );
        assert!(expect_field_only(&instance(2, 0.0, 1.0, &[(0, 1)]), a).is_err());
    }

    #[test]
    fn triangle_free_with_fields() {
        let g = IsingInstance::new(2, vec![1.0, 1.0], [(0, 1, 1.0)]).unwrap();
        for k in 0..10 {
            let a = Angles::new(FRAC_PI_4, 0.17 * k as f64);
            assert_abs_diff_eq!(
                expect_edge_triangle_free(&g, 0, a).unwrap(),
                expect_edge(&g, 0, a).unwrap(),
                epsilon = 1e-15
            );
        }
        assert_eq!(
            expect_edge_triangle_free(&g, 0, Angles::new(0.5, 0.0)).unwrap(),
            0.0
        );
        let tri = instance(3, 0.0, 1.0, &[(0, 1), (1, 2), (0, 2)]);
        assert!(expect_edge_triangle_free(&tri, 0, Angles::new(0.1, 0.1)).is_err());
    }

    #[test]
    fn complete_padding_matches() {
        let g = IsingInstance::new(5, vec![0.0, 1.0, 0.0, -1.0, 0.5], [(1, 3, 1.0)]).unwrap();
        for k in 0..10 {
            let a = Angles::new(0.3 * k as f64 - 1.2, 0.21 * k as f64);
            assert_abs_diff_eq!(
                expect_edge_complete(&g, 0, a).unwrap(),
                expect_edge(&g, 0, a).unwrap(),
                epsilon = 1e-15
            );
        }
        assert_eq!(
            expect_edge_complete(&g, 0, Angles::new(0.0, 0.4)).unwrap(),
            0.0
        );
    }
}
