//! Representations of a quiver and their Hom and Ext¹ spaces.
//!
//! Both spaces come from the single linear map
//!
//! ```text
//! Φ : ⊕_i Hom(V_i, W_i) → ⊕_α Hom(V_s(α), W_t(α)),   (u_i) ↦ (g_α u_s(α) − u_t(α) f_α)
//! ```
//!
//! with `Hom(M, N) = ker Φ` and `Ext¹(M, N) = coker Φ`. Coordinates of the
//! domain are ordered by vertex, then row-major within each block; those of
//! the codomain by arrow declaration order, then row-major.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};
use crate::xlinalg::{FieldSpec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Quiver,
    field: FieldSpec,
    dims: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Checks that each arrow `α` carries a `dims[t(α)] x dims[s(α)]` matrix over `field`.
    pub fn new(
        quiver: Quiver,
        field: FieldSpec,
        dims: DimVector,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} dimensions for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::ShapeMismatch(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            if m.field() != field {
                return Err(Error::Mismatch(format!(
                    "arrow {} carries a matrix over {} in a representation over {field}",
                    a.id,
                    m.field()
                )));
            }
            let want = (dims[a.target], dims[a.source]);
            if m.shape() != want {
                return Err(Error::ShapeMismatch(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.id,
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: &Quiver, field: FieldSpec) -> Self {
        Self::with_zero_maps(quiver, field, DimVector::zero(quiver.vertex_count()))
    }

    /// All arrow maps zero.
    pub fn with_zero_maps(quiver: &Quiver, field: FieldSpec, dims: DimVector) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Self {
            quiver: quiver.clone(),
            field,
            dims,
            maps,
        }
    }

    /// The simple representation at vertex `i`.
    pub fn simple(quiver: &Quiver, field: FieldSpec, i: usize) -> Self {
        Self::with_zero_maps(quiver, field, DimVector::unit(quiver.vertex_count(), i))
    }

    /// Arrow matrices with entries drawn by [`FieldSpec::random_scalar`].
    pub fn random<R: Rng + ?Sized>(
        quiver: &Quiver,
        field: FieldSpec,
        dims: DimVector,
        rng: &mut R,
        bound: i64,
    ) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::random(field, dims[a.target], dims[a.source], rng, bound))
            .collect();
        Self {
            quiver: quiver.clone(),
            field,
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.total()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    /// The identity endomorphism.
    pub fn identity(&self) -> Vec<Matrix> {
        self.dims
            .coords()
            .iter()
            .map(|&d| Matrix::identity(self.field, d))
            .collect()
    }
}

fn check_compatible(m: &Representation, n: &Representation) -> Result<()> {
    if m.quiver != n.quiver {
        return Err(Error::Mismatch(
            "representations of different quivers".into(),
        ));
    }
    if m.field != n.field {
        return Err(Error::Mismatch(format!(
            "representations over {} and {}",
            m.field, n.field
        )));
    }
    Ok(())
}

/// Offsets of the vertex blocks in the domain of Φ.
fn vertex_offsets(m: &Representation, n: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(m.dims.len() + 1);
    let mut acc = 0;
    off.push(0);
    for i in 0..m.dims.len() {
        acc += n.dims[i] * m.dims[i];
        off.push(acc);
    }
    off
}

/// Offsets of the arrow blocks in the codomain of Φ.
fn arrow_offsets(m: &Representation, n: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(m.maps.len() + 1);
    let mut acc = 0;
    off.push(0);
    for a in m.quiver.arrows() {
        acc += n.dims[a.target] * m.dims[a.source];
        off.push(acc);
    }
    off
}

/// The matrix of Φ for the pair `(M, N)`.
pub fn commutation_map(m: &Representation, n: &Representation) -> Result<Matrix> {
    check_compatible(m, n)?;
    let field = m.field;
    let dom = vertex_offsets(m, n);
    let cod = arrow_offsets(m, n);
    let mut phi = Matrix::zeros(field, *cod.last().unwrap(), *dom.last().unwrap());
    for (k, a) in m.quiver.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (f, g) = (&m.maps[k], &n.maps[k]);
        let ms = m.dims[s];
        let mt = m.dims[t];
        let nt = n.dims[t];
        let ns = n.dims[s];
        for row in 0..nt {
            for col in 0..ms {
                let out = cod[k] + row * ms + col;
                // g_α u_s: coefficient g[row][r] on u_s[r][col]
                for r in 0..ns {
                    let c = g.get(row, r);
                    if !c.is_zero() {
                        let j = dom[s] + r * ms + col;
                        let v = phi.get(out, j) + c;
                        phi.set(out, j, v);
                    }
                }
                // u_t f_α: coefficient f[r][col] on u_t[row][r]
                for r in 0..mt {
                    let c = f.get(r, col);
                    if !c.is_zero() {
                        let j = dom[t] + row * mt + r;
                        let v = phi.get(out, j) - c;
                        phi.set(out, j, v);
                    }
                }
            }
        }
    }
    Ok(phi)
}

fn split_blocks(v: &[Scalar], field: FieldSpec, shapes: &[(usize, usize)]) -> Vec<Matrix> {
    let mut pos = 0;
    shapes
        .iter()
        .map(|&(r, c)| {
            let m = Matrix::from_fn(field, r, c, |i, j| v[pos + i * c + j].clone());
            pos += r * c;
            m
        })
        .collect()
}

fn join_blocks(blocks: &[Matrix]) -> Vec<Scalar> {
    blocks
        .iter()
        .flat_map(|b| b.entries().iter().cloned())
        .collect()
}

fn vertex_shapes(m: &Representation, n: &Representation) -> Vec<(usize, usize)> {
    (0..m.dims.len()).map(|i| (n.dims[i], m.dims[i])).collect()
}

fn arrow_shapes(m: &Representation, n: &Representation) -> Vec<(usize, usize)> {
    m.quiver
        .arrows()
        .iter()
        .map(|a| (n.dims[a.target], m.dims[a.source]))
        .collect()
}

/// Applies Φ to a vertex-indexed tuple `u`.
pub fn coboundary_of(m: &Representation, n: &Representation, u: &[Matrix]) -> Result<Vec<Matrix>> {
    check_compatible(m, n)?;
    check_shapes(u, &vertex_shapes(m, n), "vertex tuple")?;
    m.quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            n.maps[k]
                .mul(&u[a.source])?
                .sub(&u[a.target].mul(&m.maps[k])?)
        })
        .collect()
}

fn check_shapes(blocks: &[Matrix], shapes: &[(usize, usize)], what: &str) -> Result<()> {
    if blocks.len() != shapes.len() || blocks.iter().zip(shapes).any(|(b, s)| b.shape() != *s) {
        return Err(Error::ShapeMismatch(format!(
            "{what} has the wrong block shapes"
        )));
    }
    Ok(())
}

/// True iff `u` satisfies `u_t(α) f_α = g_α u_s(α)` for every arrow.
pub fn is_morphism(m: &Representation, n: &Representation, u: &[Matrix]) -> Result<bool> {
    Ok(coboundary_of(m, n, u)?.iter().all(Matrix::is_zero))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpace {
    pub source: Representation,
    pub target: Representation,
    /// Each element is a vertex-indexed tuple `u_i : V_i → W_i`.
    pub basis: Vec<Vec<Matrix>>,
}

impl MorphismSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `Σ c_k basis_k`.
    pub fn combination(&self, coeffs: &[Scalar]) -> Vec<Matrix> {
        let field = self.source.field;
        let shapes = vertex_shapes(&self.source, &self.target);
        let mut acc: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| Matrix::zeros(field, r, c))
            .collect();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (a, m) in acc.iter_mut().zip(b) {
                *a = a.add(&m.scale(c)).expect("same shape");
            }
        }
        acc
    }

    /// Whether the tuple `u` lies in the span of the basis.
    pub fn contains(&self, u: &[Matrix]) -> Result<bool> {
        let total = vertex_offsets(&self.source, &self.target);
        let columns: Vec<Vec<Scalar>> = self.basis.iter().map(|b| join_blocks(b)).collect();
        let a = Matrix::from_columns(self.source.field, *total.last().unwrap(), &columns);
        check_shapes(
            u,
            &vertex_shapes(&self.source, &self.target),
            "vertex tuple",
        )?;
        Ok(a.solve(&join_blocks(u))?.is_some())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSpace {
    pub source: Representation,
    pub target: Representation,
    /// Arrow-indexed tuples `η_α : V_s(α) → W_t(α)` whose classes form a basis.
    pub cocycles: Vec<Vec<Matrix>>,
}

impl ExtSpace {
    pub fn dimension(&self) -> usize {
        self.cocycles.len()
    }
}

pub fn hom_space(m: &Representation, n: &Representation) -> Result<MorphismSpace> {
    let phi = commutation_map(m, n)?;
    let shapes = vertex_shapes(m, n);
    let basis = phi
        .kernel_basis()
        .iter()
        .map(|v| split_blocks(v, m.field, &shapes))
        .collect();
    Ok(MorphismSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
    })
}

pub fn ext1_space(m: &Representation, n: &Representation) -> Result<ExtSpace> {
    let phi = commutation_map(m, n)?;
    let shapes = arrow_shapes(m, n);
    let cocycles = phi
        .cokernel_basis()
        .iter()
        .map(|v| split_blocks(v, m.field, &shapes))
        .collect();
    Ok(ExtSpace {
        source: m.clone(),
        target: n.clone(),
        cocycles,
    })
}

/// Whether the arrow-indexed tuple `eta` lies in the image of Φ.
pub fn is_coboundary(m: &Representation, n: &Representation, eta: &[Matrix]) -> Result<bool> {
    let phi = commutation_map(m, n)?;
    check_shapes(eta, &arrow_shapes(m, n), "cocycle")?;
    Ok(phi.solve(&join_blocks(eta))?.is_some())
}

pub fn end_dim(m: &Representation) -> Result<usize> {
    Ok(hom_space(m, m)?.dimension())
}

/// `End(M)` is one-dimensional.
pub fn is_schur(m: &Representation) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    Ok(end_dim(m)? == 1)
}

/// Block-diagonal direct sum.
pub fn direct_sum(m: &Representation, n: &Representation) -> Result<Representation> {
    check_compatible(m, n)?;
    let maps = m
        .maps
        .iter()
        .zip(&n.maps)
        .map(|(f, g)| Matrix::block_diag(f, g))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(m.quiver.clone(), m.field, m.dims.add(&n.dims), maps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// Carries an invertible morphism `M → N`.
    Isomorphic(Vec<Matrix>),
    /// Proven: different dimension vectors, mismatched Hom dimensions, or an
    /// exhaustive search found no invertible morphism.
    NotIsomorphic,
    /// Random search found no invertible morphism; nothing was proven.
    NotCertified,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

const RANDOM_ATTEMPTS: usize = 20;
const EXHAUSTIVE_MAX_DIM: usize = 4;
const EXHAUSTIVE_MAX_POINTS: u64 = 100_000;

fn is_invertible_tuple(u: &[Matrix]) -> bool {
    u.iter().all(Matrix::is_invertible)
}

/// [`is_isomorphic_seeded`] with seed 0.
pub fn is_isomorphic(m: &Representation, n: &Representation) -> Result<IsoVerdict> {
    is_isomorphic_seeded(m, n, 0)
}

/// Searches `Hom(M, N)` for an invertible element.
///
/// Over the rationals: random integer combinations with coefficients in
/// `[-3, 3]`, 20 attempts. Over `F_p`: every coefficient vector when
/// `dim Hom <= 4` and `p^dim <= 10^5`, otherwise 20 random attempts. A
/// one-dimensional Hom space is decided by its basis element alone.
pub fn is_isomorphic_seeded(
    m: &Representation,
    n: &Representation,
    seed: u64,
) -> Result<IsoVerdict> {
    check_compatible(m, n)?;
    if m.dims != n.dims {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    let hom = hom_space(m, n)?;
    if m.is_zero() {
        return Ok(IsoVerdict::Isomorphic(hom.combination(&[])));
    }
    let k = hom.dimension();
    if k == 0 {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if k == 1 {
        return Ok(if is_invertible_tuple(&hom.basis[0]) {
            IsoVerdict::Isomorphic(hom.basis[0].clone())
        } else {
            IsoVerdict::NotIsomorphic
        });
    }
    let field = m.field;
    if let FieldSpec::PrimeField(p) = field {
        let points = (p as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if k <= EXHAUSTIVE_MAX_DIM && points <= EXHAUSTIVE_MAX_POINTS as u128 {
            for idx in 1..points as u64 {
                let mut rest = idx;
                let coeffs: Vec<Scalar> = (0..k)
                    .map(|_| {
                        let c = field.from_i64((rest % p) as i64);
                        rest /= p;
                        c
                    })
                    .collect();
                let u = hom.combination(&coeffs);
                if is_invertible_tuple(&u) {
                    return Ok(IsoVerdict::Isomorphic(u));
                }
            }
            return Ok(IsoVerdict::NotIsomorphic);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let coeffs: Vec<Scalar> = (0..k).map(|_| field.random_scalar(&mut rng, 3)).collect();
        let u = hom.combination(&coeffs);
        if is_invertible_tuple(&u) {
            return Ok(IsoVerdict::Isomorphic(u));
        }
    }
    if end_dim(m)? != k || end_dim(n)? != k || hom_space(n, m)?.dimension() != k {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    Ok(IsoVerdict::NotCertified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{euler_form, DimVector};
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn a2() -> Quiver {
        Quiver::from_edges(2, &[(0, 1)]).unwrap()
    }

    fn p1(field: FieldSpec, scalar: i64) -> Representation {
        Representation::new(
            a2(),
            field,
            DimVector::new(vec![1, 1]),
            vec![Matrix::from_i64(field, &[&[scalar]])],
        )
        .unwrap()
    }

    fn s(i: usize) -> Representation {
        Representation::simple(&a2(), Q, i)
    }

    #[test]
    fn construction_checks_shapes() {
        let bad = Representation::new(
            a2(),
            Q,
            DimVector::new(vec![1, 2]),
            vec![Matrix::zeros(Q, 1, 1)],
        );
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
        let wrong_field = Representation::new(
            a2(),
            Q,
            DimVector::new(vec![1, 1]),
            vec![Matrix::zeros(FieldSpec::PrimeField(2), 1, 1)],
        );
        assert!(matches!(wrong_field, Err(Error::Mismatch(_))));
    }

    #[test]
    fn commutation_map_examples() {
        let z = Representation::zero(&a2(), Q);
        assert_eq!(commutation_map(&z, &z).unwrap().shape(), (0, 0));

        let phi = commutation_map(&s(0), &s(1)).unwrap();
        assert_eq!(phi.shape(), (1, 0));

        let phi = commutation_map(&p1(Q, 1), &p1(Q, 1)).unwrap();
        // u = (u1, u2) ↦ 1·u1 − u2·1
        assert_eq!(phi, Matrix::from_i64(Q, &[&[1, -1]]));
        assert_eq!(phi.rank(), 1);
        assert_eq!(phi.kernel_basis().len(), 1);
    }

    #[test]
    fn hom_examples() {
        assert_eq!(hom_space(&s(0), &s(1)).unwrap().dimension(), 0);
        // P1 → S2: u1 lands in W_1 = 0 and u2·1 = 0·u1 forces u2 = 0
        let h = hom_space(&p1(Q, 1), &s(1)).unwrap();
        let phi = commutation_map(&p1(Q, 1), &s(1)).unwrap();
        assert_eq!(phi, Matrix::from_i64(Q, &[&[-1]]));
        assert_eq!(h.dimension(), 0);
        // S2 is a subrepresentation of P1
        assert_eq!(hom_space(&s(1), &p1(Q, 1)).unwrap().dimension(), 1);
        // P1 → S1 is the quotient
        assert_eq!(hom_space(&p1(Q, 1), &s(0)).unwrap().dimension(), 1);
    }

    #[test]
    fn ext_examples() {
        assert_eq!(ext1_space(&s(0), &s(1)).unwrap().dimension(), 1);
        assert_eq!(ext1_space(&s(1), &s(0)).unwrap().dimension(), 0);
        assert_eq!(ext1_space(&p1(Q, 1), &p1(Q, 1)).unwrap().dimension(), 0);
    }

    #[test]
    fn coboundary_examples() {
        let (m, n) = (s(0), s(1));
        let zero = vec![Matrix::zeros(Q, 1, 1)];
        assert!(is_coboundary(&m, &n, &zero).unwrap());
        let ext = ext1_space(&m, &n).unwrap();
        assert!(!is_coboundary(&m, &n, &ext.cocycles[0]).unwrap());
        let p = p1(Q, 1);
        for x in [-2, 0, 7] {
            let eta = vec![Matrix::from_i64(Q, &[&[x]])];
            assert!(is_coboundary(&p, &p, &eta).unwrap());
        }
        assert!(is_coboundary(&m, &n, &[]).is_err());
    }

    #[test]
    fn schur_examples() {
        assert_eq!(end_dim(&s(0)).unwrap(), 1);
        assert!(is_schur(&s(1)).unwrap());
        let ss = direct_sum(&s(0), &s(0)).unwrap();
        assert_eq!(end_dim(&ss).unwrap(), 4);
        assert!(!is_schur(&ss).unwrap());
        assert!(is_schur(&p1(Q, 1)).unwrap());
        assert_eq!(
            is_schur(&Representation::zero(&a2(), Q)),
            Err(Error::ZeroRepresentation)
        );
    }

    #[test]
    fn direct_sum_examples() {
        let z = Representation::zero(&a2(), Q);
        let p = p1(Q, 3);
        assert_eq!(direct_sum(&p, &z).unwrap(), p);
        let s12 = direct_sum(&s(0), &s(1)).unwrap();
        assert_eq!(s12.dims(), &DimVector::new(vec![1, 1]));
        assert!(s12.map(0).is_zero());
        let other = Representation::simple(&a2(), FieldSpec::PrimeField(3), 0);
        assert!(matches!(direct_sum(&s(0), &other), Err(Error::Mismatch(_))));
    }

    #[test]
    fn isomorphism_examples() {
        let p = p1(Q, 1);
        assert!(is_isomorphic(&p, &p).unwrap().is_isomorphic());
        assert_eq!(
            is_isomorphic(&s(0), &s(1)).unwrap(),
            IsoVerdict::NotIsomorphic
        );
        match is_isomorphic(&p, &p1(Q, 5)).unwrap() {
            IsoVerdict::Isomorphic(u) => assert!(is_morphism(&p, &p1(Q, 5), &u).unwrap()),
            other => panic!("{other:?}"),
        }
        let split = direct_sum(&s(0), &s(1)).unwrap();
        assert_eq!(
            is_isomorphic(&p, &split).unwrap(),
            IsoVerdict::NotIsomorphic
        );
    }

    #[test]
    fn exhaustive_search_over_small_prime_fields() {
        let f2 = FieldSpec::PrimeField(2);
        let m = direct_sum(&Representation::simple(&a2(), f2, 0), &p1(f2, 1)).unwrap();
        let n = direct_sum(&p1(f2, 1), &Representation::simple(&a2(), f2, 0)).unwrap();
        match is_isomorphic(&m, &n).unwrap() {
            IsoVerdict::Isomorphic(u) => {
                assert!(is_morphism(&m, &n, &u).unwrap());
                assert!(u.iter().all(Matrix::is_invertible));
            }
            other => panic!("{other:?}"),
        }
        let split = direct_sum(
            &direct_sum(
                &Representation::simple(&a2(), f2, 0),
                &Representation::simple(&a2(), f2, 0),
            )
            .unwrap(),
            &Representation::simple(&a2(), f2, 1),
        )
        .unwrap();
        assert_eq!(
            is_isomorphic(&m, &split).unwrap(),
            IsoVerdict::NotIsomorphic
        );
    }

    #[test]
    fn identity_lies_in_end() {
        let p = p1(Q, 4);
        let end = hom_space(&p, &p).unwrap();
        assert!(end.contains(&p.identity()).unwrap());
    }

    fn arb_pair() -> impl Strategy<Value = (Representation, Representation)> {
        let fields = prop_oneof![
            Just(Q),
            Just(FieldSpec::PrimeField(2)),
            Just(FieldSpec::PrimeField(3))
        ];
        (fields, 0u64..1000, proptest::collection::vec(0usize..3, 8)).prop_map(
            |(field, seed, d)| {
                let q = crate::quiver::dynkin::dynkin_quiver(
                    crate::quiver::DynkinType::D(4),
                    crate::quiver::Orientation::Random(seed),
                );
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let m =
                    Representation::random(&q, field, DimVector::new(d[..4].to_vec()), &mut rng, 2);
                let n =
                    Representation::random(&q, field, DimVector::new(d[4..].to_vec()), &mut rng, 2);
                (m, n)
            },
        )
    }

    proptest! {
        #[test]
        fn euler_identity((m, n) in arb_pair()) {
            let hom = hom_space(&m, &n).unwrap().dimension() as i64;
            let ext = ext1_space(&m, &n).unwrap().dimension() as i64;
            prop_assert_eq!(hom - ext, euler_form(m.quiver(), m.dims(), n.dims()).unwrap());
        }

        #[test]
        fn hom_basis_consists_of_morphisms((m, n) in arb_pair()) {
            for u in hom_space(&m, &n).unwrap().basis {
                prop_assert!(is_morphism(&m, &n, &u).unwrap());
            }
            let end = hom_space(&m, &m).unwrap();
            prop_assert!(end.contains(&m.identity()).unwrap());
        }

        #[test]
        fn hom_is_additive((m, n) in arb_pair()) {
            let mn = direct_sum(&m, &n).unwrap();
            let d = |a: &Representation, b: &Representation| hom_space(a, b).unwrap().dimension();
            prop_assert_eq!(d(&mn, &n), d(&m, &n) + d(&n, &n));
            prop_assert_eq!(d(&m, &mn), d(&m, &m) + d(&m, &n));
            prop_assert_eq!(
                end_dim(&mn).unwrap(),
                end_dim(&m).unwrap() + end_dim(&n).unwrap() + d(&m, &n) + d(&n, &m)
            );
        }

        #[test]
        fn cocycles_are_not_coboundaries((m, n) in arb_pair()) {
            let ext = ext1_space(&m, &n).unwrap();
            for eta in &ext.cocycles {
                prop_assert!(!is_coboundary(&m, &n, eta).unwrap());
            }
        }
    }
}
