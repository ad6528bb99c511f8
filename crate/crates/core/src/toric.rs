//! Complete fans with three rays in a rank-2 lattice.
//!
//! Weighted projective planes `P(w0,w1,w2)` are built from the presentation
//! `N = Z^3 / Z(w0,w1,w2)`; a diagonal `mu_e` action with weights
//! `(m0,m1,m2)` adjoins the extra lattice vector `(m0,m1,m2)/e`. A concrete
//! `Z^2` basis comes from the Smith normal form of the relation matrix.
//! Ray `i` is the image of the `i`-th standard basis vector, so homogeneous
//! coordinate `X_i` corresponds to ray `v_i` and the torus-fixed point
//! `X_i = 1` to the cone spanned by the other two rays.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, IntMatrix};
use crate::singularities::{milnor_number, QuotSing, SingClass};

pub type Vec2 = [BigInt; 2];

pub fn det2(u: &Vec2, v: &Vec2) -> BigInt {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn fmt_vec(v: &Vec2) -> String {
    format!("({},{})", v[0], v[1])
}

fn primitive(v: Vec2) -> Option<Vec2> {
    let g = v[0].gcd(&v[1]);
    if g.is_zero() {
        return None;
    }
    Some([&v[0] / &g, &v[1] / &g])
}

/// `mu_e` acting diagonally with weights `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientData {
    pub e: BigInt,
    pub m: [BigInt; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub weights: [BigInt; 3],
    pub quotient: Option<QuotientData>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2 {
    rays: [Vec2; 3],
    provenance: Option<Provenance>,
}

impl Fan2 {
    /// Three primitive rays, counterclockwise, spanning a complete fan.
    pub fn new(rays: [Vec2; 3]) -> Result<Self> {
        for r in &rays {
            if !r[0].gcd(&r[1]).is_one() {
                return Err(Error::BadAction(format!("ray {} is not primitive", fmt_vec(r))));
            }
        }
        for i in 0..3 {
            let (u, v) = (&rays[i], &rays[(i + 1) % 3]);
            if !det2(u, v).is_positive() {
                return Err(Error::Collinear(fmt_vec(u), fmt_vec(v)));
            }
        }
        Ok(Fan2 {
            rays,
            provenance: None,
        })
    }

    pub fn rays(&self) -> &[Vec2; 3] {
        &self.rays
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// The rays spanning the cone of the fixed point `X_i = 1`.
    pub fn vertex_cone(&self, i: usize) -> (&Vec2, &Vec2) {
        (&self.rays[(i + 1) % 3], &self.rays[(i + 2) % 3])
    }

    /// The unique positive primitive relation `sum w_i v_i = 0`.
    pub fn relation_weights(&self) -> [BigInt; 3] {
        let w: [BigInt; 3] = std::array::from_fn(|i| {
            let (u, v) = self.vertex_cone(i);
            det2(u, v)
        });
        let g = w[0].gcd(&w[1]).gcd(&w[2]);
        w.map(|x| x / &g)
    }

    /// Index of the sublattice spanned by the rays.
    pub fn ray_lattice_index(&self) -> BigInt {
        let [a, b, c] = &self.rays;
        det2(a, b).gcd(&det2(b, c)).gcd(&det2(c, a))
    }

    /// One singularity per fixed point, in vertex order.
    pub fn vertex_singularities(&self) -> Result<[QuotSing; 3]> {
        let s0 = cone_singularity(self.vertex_cone(0).0, self.vertex_cone(0).1)?;
        let s1 = cone_singularity(self.vertex_cone(1).0, self.vertex_cone(1).1)?;
        let s2 = cone_singularity(self.vertex_cone(2).0, self.vertex_cone(2).1)?;
        Ok([s0, s1, s2])
    }
}

impl fmt::Display for Fan2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(fmt_vec).collect();
        write!(f, "[{}]", rays.join(", "))
    }
}

/// The singularity of the cone spanned by `u` and `v`.
///
/// A unimodular change of basis sends `u` to `(0,1)` and `v` to `(n, -a)` with
/// `0 <= a < n`; the cone is then `1/n(1,a)`.
pub fn cone_singularity(u: &Vec2, v: &Vec2) -> Result<QuotSing> {
    let n = det2(u, v).abs();
    if n.is_zero() {
        return Err(Error::Collinear(fmt_vec(u), fmt_vec(v)));
    }
    if n.is_one() {
        return Ok(QuotSing::smooth());
    }
    let u = primitive(u.clone()).expect("nonzero");
    let ext = u[0].extended_gcd(&u[1]);
    // Rows (u1, -u0) and (x, y) with x u0 + y u1 = 1 send u to (0, 1).
    // The first coordinate of the image of v is -det(u, v), +-n; reflecting it
    // to n and shearing (x, y) -> (x, y + kx) only moves the second mod n.
    let second = &ext.x * &v[0] + &ext.y * &v[1];
    let a = (-second).mod_floor(&n);
    QuotSing::new(n, a)
}

fn check_weights(w: &[BigInt; 3]) -> Result<()> {
    let bad = || Error::BadWeights(w[0].clone(), w[1].clone(), w[2].clone());
    if !w.iter().all(Signed::is_positive) {
        return Err(bad());
    }
    for i in 0..3 {
        if !w[i].gcd(&w[(i + 1) % 3]).is_one() {
            return Err(bad());
        }
    }
    Ok(())
}

/// Realises `(Z^3 + Z m/e) / Q w` with a concrete basis and returns the images
/// of the standard basis vectors together with the index `[N : N_Y]`.
fn lattice_images(w: &[BigInt; 3], quotient: Option<&QuotientData>) -> Result<([Vec2; 3], BigInt)> {
    let gens = if quotient.is_some() { 4 } else { 3 };
    let mut relations: IntMatrix = vec![Vec::new(); gens];
    for i in 0..3 {
        relations[i].push(w[i].clone());
    }
    if let Some(q) = quotient {
        relations[3].push(BigInt::zero());
        for i in 0..3 {
            relations[i].push(-&q.m[i]);
        }
        relations[3].push(q.e.clone());
    }
    let snf = smith_normal_form(&relations);
    let rank = snf.rank();
    if gens - rank != 2 {
        return Err(Error::BadAction(format!(
            "quotient lattice has rank {}, expected 2",
            gens - rank
        )));
    }
    let images: [Vec2; 3] =
        std::array::from_fn(|i| [snf.u[rank][i].clone(), snf.u[rank + 1][i].clone()]);
    let index = det2(&images[0], &images[1])
        .gcd(&det2(&images[1], &images[2]))
        .gcd(&det2(&images[2], &images[0]));
    Ok((images, index))
}

fn fan_from_images(images: [Vec2; 3], provenance: Provenance) -> Result<Fan2> {
    let mut rays = Vec::with_capacity(3);
    for (i, v) in images.into_iter().enumerate() {
        let r = primitive(v)
            .ok_or_else(|| Error::BadAction(format!("ray {i} collapses to zero")))?;
        rays.push(r);
    }
    let mut rays: [Vec2; 3] = rays.try_into().expect("three rays");
    if det2(&rays[0], &rays[1]).is_negative() {
        for r in rays.iter_mut() {
            r[1] = -&r[1];
        }
    }
    let mut fan = Fan2::new(rays)?;
    fan.provenance = Some(provenance);
    Ok(fan)
}

/// The fan of `P(w0, w1, w2)`.
pub fn wps_fan(w0: &BigInt, w1: &BigInt, w2: &BigInt) -> Result<Fan2> {
    let w = [w0.clone(), w1.clone(), w2.clone()];
    check_weights(&w)?;
    let (images, index) = lattice_images(&w, None)?;
    debug_assert!(index.is_one());
    fan_from_images(
        images,
        Provenance {
            weights: w,
            quotient: None,
        },
    )
}

/// The fan of `P(w) / mu_e` for a weighted projective plane fan.
pub fn quotient_fan(f: &Fan2, e: &BigInt, m: &[BigInt; 3]) -> Result<Fan2> {
    let base = f
        .provenance
        .as_ref()
        .filter(|p| p.quotient.is_none())
        .ok_or_else(|| Error::BadAction("quotient needs a weighted projective plane".into()))?;
    if *e < BigInt::from(2) {
        return Err(Error::BadAction(format!("group order {e} is below 2")));
    }
    let q = QuotientData {
        e: e.clone(),
        m: m.clone(),
    };
    let (images, index) = lattice_images(&base.weights, Some(&q))?;
    if index != *e {
        return Err(Error::BadAction(format!(
            "lattice index {index} differs from group order {e}"
        )));
    }
    fan_from_images(
        images,
        Provenance {
            weights: base.weights.clone(),
            quotient: Some(q),
        },
    )
}

/// `K^2` from the rational intersection numbers of the boundary divisors.
pub fn k_squared(f: &Fan2) -> BigRational {
    let r = &f.rays;
    let det = |i: usize, j: usize| BigRational::from_integer(det2(&r[i % 3], &r[j % 3]));
    let mut total = BigRational::zero();
    for i in 0..3 {
        let (prev, next) = (i + 2, i + 1);
        // D_i^2 = -det(v_{i-1}, v_{i+1}) / (det(v_{i-1}, v_i) det(v_i, v_{i+1}))
        total -= det(prev, next) / (det(prev, i) * det(i, next));
        // 2 D_i . D_{i+1}
        total += BigRational::from_integer(BigInt::from(2)) / det(i, next);
    }
    total
}

/// `(w0 + w1 + w2)^2 / (w0 w1 w2 e)`, the degree from the weights.
pub fn k_squared_from_weights(p: &Provenance) -> BigRational {
    let sum: BigInt = p.weights.iter().sum();
    let prod: BigInt = p.weights.iter().product();
    let e = p.quotient.as_ref().map_or_else(BigInt::one, |q| q.e.clone());
    BigRational::new(&sum * &sum, prod * e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceReport {
    pub rays: [Vec2; 3],
    /// Per fixed point, in vertex order.
    pub quot_sings: [QuotSing; 3],
    pub singularities: [SingClass; 3],
    /// `mu + 1` per fixed point; `None` when the point has no smoothing.
    pub d_values: [Option<BigInt>; 3],
    pub k_squared: BigRational,
    pub euler: u32,
    pub picard_rank: u32,
    /// Every point is smooth, Du Val or of class T.
    pub valid: bool,
    pub noether_ok: bool,
}

impl SurfaceReport {
    /// Singular points only, sorted.
    pub fn singular_points(&self) -> Vec<SingClass> {
        let mut v: Vec<SingClass> = self
            .singularities
            .iter()
            .filter(|c| !c.is_smooth())
            .cloned()
            .collect();
        v.sort();
        v
    }

    pub fn sorted_d_values(&self) -> Option<Vec<BigInt>> {
        let mut v: Vec<BigInt> = self.d_values.iter().cloned().collect::<Option<_>>()?;
        v.sort();
        Some(v)
    }

    pub fn milnor_sum(&self) -> Option<BigInt> {
        self.singularities
            .iter()
            .map(|c| milnor_number(c).ok())
            .sum()
    }
}

pub fn surface_report(f: &Fan2) -> Result<SurfaceReport> {
    let quot_sings = f.vertex_singularities()?;
    let singularities = quot_sings.clone().map(|q| q.classify());
    let d_values = singularities
        .clone()
        .map(|c| milnor_number(&c).ok().map(|mu| mu + 1));
    let valid = d_values.iter().all(Option::is_some);
    let k2 = k_squared(f);
    let euler = 3u32;
    let noether_ok = valid
        && match singularities.iter().map(|c| milnor_number(c).ok()).sum::<Option<BigInt>>() {
            Some(mu) => {
                k2.clone() + BigRational::from_integer(BigInt::from(euler) + mu)
                    == BigRational::from_integer(BigInt::from(12))
            }
            None => false,
        };
    Ok(SurfaceReport {
        rays: f.rays.clone(),
        quot_sings,
        singularities,
        d_values,
        k_squared: k2,
        euler,
        picard_rank: 1,
        valid,
        noether_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn v(x: i64, y: i64) -> Vec2 {
        [b(x), b(y)]
    }

    fn wps(a: i64, c: i64, d: i64) -> Fan2 {
        wps_fan(&b(a), &b(c), &b(d)).unwrap()
    }

    fn sings(f: &Fan2) -> Vec<SingClass> {
        surface_report(f).unwrap().singular_points()
    }

    fn k2(n: i64) -> BigRational {
        BigRational::from_integer(b(n))
    }

    #[test]
    fn cone_examples() {
        assert!(cone_singularity(&v(1, 0), &v(0, 1)).unwrap().is_smooth());
        assert_eq!(
            cone_singularity(&v(1, 1), &v(1, -1)).unwrap().classify(),
            SingClass::a(1)
        );
        assert_eq!(
            cone_singularity(&v(0, 1), &v(4, -1)).unwrap(),
            QuotSing::new(b(4), b(1)).unwrap()
        );
        assert!(cone_singularity(&v(1, 2), &v(2, 4)).is_err());
    }

    #[test]
    fn cone_is_symmetric() {
        for (u, w) in [((1, 0), (3, 7)), ((2, 5), (-1, 4)), ((0, 1), (9, -2))] {
            let (u, w) = (v(u.0, u.1), v(w.0, w.1));
            assert_eq!(
                cone_singularity(&u, &w).unwrap(),
                cone_singularity(&w, &u).unwrap()
            );
        }
    }

    /// `1/w_i(w_j, w_k)` normalised to `1/w_i(1, w_k w_j^{-1})`.
    fn weight_formula(w: [i64; 3], i: usize) -> QuotSing {
        let (wi, wj, wk) = (w[i], w[(i + 1) % 3], w[(i + 2) % 3]);
        if wi == 1 {
            return QuotSing::smooth();
        }
        let inv = (1..wi).find(|x| (wj * x) % wi == 1).unwrap();
        QuotSing::new(b(wi), b((wk * inv) % wi)).unwrap()
    }

    #[test]
    fn wps_cones_match_weight_formula() {
        for w in [[1, 1, 1], [1, 1, 2], [1, 9, 20], [1, 4, 25], [4, 25, 841], [2, 3, 5], [7, 11, 13]] {
            let f = wps(w[0], w[1], w[2]);
            let got = f.vertex_singularities().unwrap();
            for i in 0..3 {
                assert_eq!(got[i], weight_formula(w, i), "P{w:?} vertex {i}");
            }
            assert_eq!(f.relation_weights(), w.map(b));
            assert!(f.ray_lattice_index().is_one());
        }
    }

    #[test]
    fn wps_examples() {
        let p2 = wps(1, 1, 1);
        assert!(sings(&p2).is_empty());
        assert_eq!(k_squared(&p2), k2(9));

        let p112 = wps(1, 1, 2);
        assert_eq!(sings(&p112), vec![SingClass::a(1)]);
        assert_eq!(k_squared(&p112), k2(8));

        let p = wps(1, 9, 20);
        let mut expected = vec![
            QuotSing::new(b(9), b(2)).unwrap(),
            QuotSing::new(b(20), b(9)).unwrap(),
        ];
        expected.sort();
        let mut got: Vec<QuotSing> = p
            .vertex_singularities()
            .unwrap()
            .into_iter()
            .filter(|q| !q.is_smooth())
            .collect();
        got.sort();
        assert_eq!(got, expected);

        assert!(wps_fan(&b(2), &b(4), &b(1)).is_err());
        assert!(wps_fan(&b(0), &b(1), &b(1)).is_err());
    }

    #[test]
    fn p114_has_a_quarter_point() {
        assert_eq!(sings(&wps(1, 1, 4)), vec![SingClass::tclass(1, 2, 1)]);
    }

    fn quot(base: Fan2, e: i64, m: [i64; 3]) -> Fan2 {
        quotient_fan(&base, &b(e), &m.map(b)).unwrap()
    }

    #[test]
    fn quotient_examples() {
        let f = quot(wps(1, 1, 2), 2, [0, 1, -1]);
        assert_eq!(
            sings(&f),
            vec![SingClass::a(1), SingClass::a(1), SingClass::a(3)]
        );
        assert_eq!(k_squared(&f), k2(4));

        let f = quot(wps(1, 1, 1), 3, [0, 1, -1]);
        assert_eq!(sings(&f), vec![SingClass::a(2); 3]);

        let f = quot(wps(1, 1, 2), 4, [0, 1, 1]);
        assert_eq!(
            sings(&f),
            vec![
                SingClass::a(7),
                SingClass::tclass(1, 2, 1),
                SingClass::tclass(1, 2, 1)
            ]
        );
        assert_eq!(f.ray_lattice_index(), b(4));
    }

    #[test]
    fn quotient_errors() {
        // m = (0, 0, 0) fixes every point: index 1, not 3.
        assert!(quotient_fan(&wps(1, 1, 1), &b(3), &[b(0), b(0), b(0)]).is_err());
        let q = quot(wps(1, 1, 1), 3, [0, 1, -1]);
        assert!(quotient_fan(&q, &b(3), &[b(0), b(1), b(-1)]).is_err());
        let bare = Fan2::new([v(1, 0), v(0, 1), v(-1, -1)]).unwrap();
        assert!(quotient_fan(&bare, &b(3), &[b(0), b(1), b(-1)]).is_err());
    }

    #[test]
    fn k_squared_matches_weights() {
        let bases = [[1, 1, 1], [1, 1, 2], [1, 2, 3], [1, 1, 5], [1, 4, 25], [1, 9, 20]];
        for w in bases {
            let f = wps(w[0], w[1], w[2]);
            assert_eq!(k_squared(&f), k_squared_from_weights(f.provenance().unwrap()));
        }
        let f = quot(wps(1, 1, 2), 4, [0, 1, -1]);
        assert_eq!(k_squared(&f), k2(2));
        assert_eq!(k_squared(&f), k_squared_from_weights(f.provenance().unwrap()));
    }

    #[test]
    fn report_fields() {
        let r = surface_report(&wps(1, 1, 4)).unwrap();
        assert!(r.valid && r.noether_ok);
        assert_eq!(r.euler, 3);
        assert_eq!(r.picard_rank, 1);
        assert_eq!(r.sorted_d_values().unwrap(), vec![b(1), b(1), b(1)]);
        assert_eq!(r.k_squared, k2(9));

        let bad = surface_report(&wps(1, 2, 5)).unwrap();
        assert!(!bad.valid && !bad.noether_ok);
        assert!(bad.sorted_d_values().is_none());
    }

    #[test]
    fn fan_validation() {
        assert!(Fan2::new([v(1, 0), v(0, 1), v(-1, -1)]).is_ok());
        assert!(Fan2::new([v(1, 0), v(-1, -1), v(0, 1)]).is_err());
        assert!(Fan2::new([v(2, 0), v(0, 1), v(-1, -1)]).is_err());
    }
}
