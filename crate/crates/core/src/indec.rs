//! Indecomposable representations of Dynkin quivers, built with reflection functors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par::Execution;
use crate::quiver::{require_finite_type, tits_form, DimVector, Quiver};
use crate::rep::{is_schur, Representation};
use crate::roots::{positive_roots, simple_reflection};
use crate::xlinalg::{FieldSpec, Matrix};

fn check_quiver(q: &Quiver, m: &Representation) -> Result<()> {
    if m.quiver() != q {
        return Err(Error::Mismatch(
            "representation lives on a different quiver".into(),
        ));
    }
    Ok(())
}

/// Replaces `V_i` by the kernel of `⊕_{t(α)=i} V_s(α) → V_i` and reverses the
/// arrows at `i`. The new arrow maps are the components of the kernel inclusion.
pub fn reflect_at_sink(
    q: &Quiver,
    i: usize,
    m: &Representation,
) -> Result<(Quiver, Representation)> {
    check_quiver(q, m)?;
    if i >= q.vertex_count() || !q.is_sink(i) {
        return Err(Error::NotASink(i));
    }
    let field = m.field();
    let incoming = q.incoming(i);
    let blocks: Vec<&Matrix> = incoming.iter().map(|&k| m.map(k)).collect();
    let assembled = Matrix::hstack(field, m.dims()[i], &blocks)?;
    let kernel = assembled.kernel_basis();
    let inclusion = Matrix::from_columns(field, assembled.cols(), &kernel);

    let mut dims = m.dims().coords().to_vec();
    dims[i] = kernel.len();
    let mut maps = m.maps().to_vec();
    let mut offset = 0;
    for &k in &incoming {
        let width = m.map(k).cols();
        maps[k] = inclusion.submatrix(offset, offset + width, 0, kernel.len());
        offset += width;
    }
    let reflected = q.reflect_at(i);
    let rep = Representation::new(reflected.clone(), field, DimVector::new(dims), maps)?;
    Ok((reflected, rep))
}

/// Replaces `V_i` by the cokernel of `V_i → ⊕_{s(α)=i} V_t(α)` and reverses the
/// arrows at `i`. The new arrow maps are the components of the quotient map.
pub fn reflect_at_source(
    q: &Quiver,
    i: usize,
    m: &Representation,
) -> Result<(Quiver, Representation)> {
    check_quiver(q, m)?;
    if i >= q.vertex_count() || !q.is_source(i) {
        return Err(Error::NotASource(i));
    }
    let field = m.field();
    let outgoing = q.outgoing(i);
    let blocks: Vec<&Matrix> = outgoing.iter().map(|&k| m.map(k)).collect();
    let assembled = Matrix::vstack(field, m.dims()[i], &blocks)?;
    let projection = assembled.cokernel_projection();

    let mut dims = m.dims().coords().to_vec();
    dims[i] = projection.rows();
    let mut maps = m.maps().to_vec();
    let mut offset = 0;
    for &k in &outgoing {
        let height = m.map(k).rows();
        maps[k] = projection.submatrix(0, projection.rows(), offset, offset + height);
        offset += height;
    }
    let reflected = q.reflect_at(i);
    let rep = Representation::new(reflected.clone(), field, DimVector::new(dims), maps)?;
    Ok((reflected, rep))
}

fn require_root(q: &Quiver, d: &DimVector) -> Result<()> {
    if d.len() != q.vertex_count() {
        return Err(Error::ShapeMismatch(format!(
            "dimension vector of length {} for {} vertices",
            d.len(),
            q.vertex_count()
        )));
    }
    let value = tits_form(q, d)?;
    if d.is_zero() || value != 1 {
        return Err(Error::NotARoot {
            dims: d.coords().to_vec(),
            q: value,
        });
    }
    Ok(())
}

fn lowest_sink(q: &Quiver) -> Option<usize> {
    (0..q.vertex_count()).find(|&i| q.is_sink(i))
}

/// The indecomposable representation with dimension vector `d`.
///
/// Walks `d` down by simple reflections at the lowest-index sink of the
/// current orientation until it becomes a unit vector `e_j`, then starts from
/// the simple `S_j` and applies source reflections in reverse order. Every
/// intermediate vector is checked to be a positive root, and every functor
/// application is checked to act on dimension vectors as the reflection does.
pub fn construct_indecomposable(
    q: &Quiver,
    d: &DimVector,
    field: FieldSpec,
) -> Result<Representation> {
    require_finite_type(q)?;
    require_root(q, d)?;
    let n = q.vertex_count();
    let cap = 2 * n * n * n + 64;

    let mut current = q.clone();
    let mut dims = d.to_signed();
    let mut sinks = Vec::new();
    let base = loop {
        let here = DimVector::from_signed(&dims).ok_or_else(|| {
            Error::Internal(format!("walk reached a non-positive vector {dims:?}"))
        })?;
        if let Some(j) = here.as_unit() {
            break j;
        }
        if sinks.len() >= cap {
            return Err(Error::Internal(format!(
                "root walk for {d} did not end in {cap} steps"
            )));
        }
        let i = lowest_sink(&current)
            .ok_or_else(|| Error::Internal("orientation without a sink".into()))?;
        dims = simple_reflection(&current, i, &dims)?;
        current = current.reflect_at(i);
        sinks.push(i);
        if let Some(next) = DimVector::from_signed(&dims) {
            if tits_form(&current, &next)? != 1 {
                return Err(Error::Internal(format!("walk left the roots at {next}")));
            }
        }
    };

    let mut rep = Representation::simple(&current, field, base);
    for &i in sinks.iter().rev() {
        let expected = simple_reflection(&current, i, &rep.dims().to_signed())?;
        let (prev, up) = reflect_at_source(&current, i, &rep)?;
        if up.dims().to_signed() != expected {
            return Err(Error::Internal(format!(
                "source reflection at {i} gave {} instead of {expected:?}",
                up.dims()
            )));
        }
        current = prev;
        rep = up;
    }
    if rep.quiver() != q || rep.dims() != d {
        return Err(Error::Internal(
            "reflection walk did not return to the input".into(),
        ));
    }
    Ok(rep)
}

/// One indecomposable per positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndecCatalog {
    pub quiver: Quiver,
    pub field: FieldSpec,
    pub entries: Vec<(DimVector, Representation)>,
}

impl IndecCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn all_indecomposables(
    q: &Quiver,
    field: FieldSpec,
    execution: Execution,
) -> Result<IndecCatalog> {
    let roots = positive_roots(q)?;
    let reps = execution.map(roots.roots(), |d| construct_indecomposable(q, d, field));
    let entries = roots
        .roots()
        .iter()
        .cloned()
        .zip(reps)
        .map(|(d, r)| r.map(|r| (d, r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(IndecCatalog {
        quiver: q.clone(),
        field,
        entries,
    })
}

pub const ORACLE_ATTEMPTS: usize = 50;
pub const ORACLE_ENTRY_BOUND: i64 = 5;

/// A random representation of dimension `d` that passes the Schur test.
/// Entries are integers in `[-5, 5]` over the rationals and uniform residues
/// over `F_p`; fields with `p < 101` are rejected.
pub fn generic_rep_oracle(
    q: &Quiver,
    d: &DimVector,
    field: FieldSpec,
    seed: u64,
) -> Result<Representation> {
    if let FieldSpec::PrimeField(p) = field {
        if p < 101 {
            return Err(Error::InvalidField(format!(
                "the random oracle needs the rationals or p >= 101, got F{p}"
            )));
        }
    }
    require_finite_type(q)?;
    require_root(q, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ORACLE_ATTEMPTS {
        let rep = Representation::random(q, field, d.clone(), &mut rng, ORACLE_ENTRY_BOUND);
        if is_schur(&rep)? {
            return Ok(rep);
        }
    }
    Err(Error::RetryCapExceeded {
        attempts: ORACLE_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::dynkin::{dynkin_quiver, kronecker};
    use crate::quiver::{DynkinType, Orientation};
    use crate::rep::{ext1_space, is_isomorphic};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn a2() -> Quiver {
        Quiver::from_edges(2, &[(0, 1)]).unwrap()
    }

    fn p1() -> Representation {
        Representation::new(
            a2(),
            Q,
            DimVector::new(vec![1, 1]),
            vec![Matrix::from_i64(Q, &[&[1]])],
        )
        .unwrap()
    }

    fn dv(x: &[usize]) -> DimVector {
        DimVector::new(x.to_vec())
    }

    #[test]
    fn sink_reflection_examples() {
        let (q2, r) = reflect_at_sink(&a2(), 1, &p1()).unwrap();
        assert_eq!(q2.arrows()[0].source, 1);
        assert_eq!(q2.arrows()[0].target, 0);
        assert_eq!(r.dims(), &dv(&[1, 0]));

        let z = Representation::zero(&a2(), Q);
        let (_, r) = reflect_at_sink(&a2(), 1, &z).unwrap();
        assert!(r.is_zero());

        let s2 = Representation::simple(&a2(), Q, 1);
        let (_, r) = reflect_at_sink(&a2(), 1, &s2).unwrap();
        assert_eq!(r.dims(), &dv(&[0, 0]));

        assert_eq!(
            reflect_at_sink(&a2(), 0, &p1()).unwrap_err(),
            Error::NotASink(0)
        );
    }

    #[test]
    fn source_reflection_examples() {
        let (q2, r) = reflect_at_sink(&a2(), 1, &p1()).unwrap();
        let (q3, back) = reflect_at_source(&q2, 1, &r).unwrap();
        assert_eq!(q3, a2());
        assert!(is_isomorphic(&back, &p1()).unwrap().is_isomorphic());

        let s1 = Representation::simple(&a2(), Q, 0);
        let (_, r) = reflect_at_source(&a2(), 0, &s1).unwrap();
        assert!(r.is_zero());

        let z = Representation::zero(&a2(), Q);
        assert!(reflect_at_source(&a2(), 0, &z).unwrap().1.is_zero());
        assert_eq!(
            reflect_at_source(&a2(), 1, &p1()).unwrap_err(),
            Error::NotASource(1)
        );
    }

    #[test]
    fn construct_examples() {
        let m = construct_indecomposable(&a2(), &dv(&[1, 1]), Q).unwrap();
        assert!(is_isomorphic(&m, &p1()).unwrap().is_isomorphic());
        assert!(!m.map(0).is_zero());

        let s = construct_indecomposable(&a2(), &dv(&[0, 1]), Q).unwrap();
        assert_eq!(s, Representation::simple(&a2(), Q, 1));

        // D4 with every arrow into the centre (vertex 4), highest root
        let d4 = Quiver::from_edges(4, &[(0, 3), (1, 3), (2, 3)]).unwrap();
        let top = dv(&[1, 1, 1, 2]);
        assert!(positive_roots(&d4).unwrap().contains(&top));
        for field in [Q, FieldSpec::PrimeField(2), FieldSpec::PrimeField(3)] {
            let m = construct_indecomposable(&d4, &top, field).unwrap();
            assert_eq!(m.dims(), &top);
            assert!(is_schur(&m).unwrap());
            assert_eq!(ext1_space(&m, &m).unwrap().dimension(), 0);
        }
    }

    #[test]
    fn construct_rejects_bad_input() {
        assert_eq!(
            construct_indecomposable(&a2(), &dv(&[2, 2]), Q).unwrap_err(),
            Error::NotARoot {
                dims: vec![2, 2],
                q: 4
            }
        );
        assert!(matches!(
            construct_indecomposable(&a2(), &dv(&[0, 0]), Q),
            Err(Error::NotARoot { .. })
        ));
        assert!(matches!(
            construct_indecomposable(&kronecker(), &dv(&[1, 0]), Q),
            Err(Error::InfiniteType(_))
        ));
    }

    #[test]
    fn catalog_sizes() {
        assert_eq!(
            all_indecomposables(&a2(), Q, Execution::Sequential)
                .unwrap()
                .len(),
            3
        );
        let a1 = Quiver::from_edges(1, &[]).unwrap();
        let c = all_indecomposables(&a1, Q, Execution::Parallel).unwrap();
        assert_eq!(
            c.entries,
            vec![(dv(&[1]), Representation::simple(&a1, Q, 0))]
        );
    }

    #[test]
    fn construction_is_reproducible_across_strategies() {
        let q = dynkin_quiver(DynkinType::D(5), Orientation::Random(4));
        let a = all_indecomposables(&q, Q, Execution::Sequential).unwrap();
        let b = all_indecomposables(&q, Q, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_examples() {
        let m = generic_rep_oracle(&a2(), &dv(&[1, 1]), Q, 3).unwrap();
        assert!(!m.map(0).is_zero());
        let s = generic_rep_oracle(&a2(), &dv(&[1, 0]), Q, 9).unwrap();
        assert_eq!(s, Representation::simple(&a2(), Q, 0));
        assert!(matches!(
            generic_rep_oracle(&a2(), &dv(&[1, 1]), FieldSpec::PrimeField(5), 0),
            Err(Error::InvalidField(_))
        ));
        assert!(generic_rep_oracle(&a2(), &dv(&[1, 1]), FieldSpec::PrimeField(101), 0).is_ok());
    }
}
