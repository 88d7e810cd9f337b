use serde::Serialize;

use super::finite::FiniteModule;
use super::FgModule;
use crate::error::{Error, Result};
use crate::euclid::{column_span_basis, kernel_basis, ColumnSpan, RingMatrix};
use crate::ordinal::Ordinal;

/// A homomorphism between presented modules. `matrix` has one column per
/// source generator holding its image in target generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: FgModule,
    pub target: FgModule,
    pub matrix: RingMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapParts {
    pub kernel: FgModule,
    pub image: FgModule,
    pub cokernel: FgModule,
}

impl ModuleMap {
    /// Checks the shape and that every source relation maps into the span of
    /// the target relations.
    pub fn new(source: FgModule, target: FgModule, matrix: RingMatrix) -> Result<Self> {
        if matrix.rows() != target.generators() || matrix.cols() != source.generators() {
            return Err(Error::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generators(),
                source.generators()
            )));
        }
        let span = ColumnSpan::new(target.relations());
        let images = matrix.mul(source.relations())?;
        for (column, img) in images.columns().iter().enumerate() {
            if !span.contains(img)? {
                return Err(Error::NotWellDefined { column });
            }
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn identity(m: &FgModule) -> Self {
        ModuleMap { source: m.clone(), target: m.clone(), matrix: RingMatrix::identity(m.ctx, m.generators()) }
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: RingMatrix::zeros(source.ctx, target.generators(), source.generators()),
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMap) -> Result<ModuleMap> {
        if inner.target != self.source {
            return Err(Error::Shape("composed maps do not share a module".into()));
        }
        Ok(ModuleMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    /// Every generator maps into the target relations.
    pub fn is_zero_map(&self) -> bool {
        let span = ColumnSpan::new(self.target.relations());
        self.matrix.columns().iter().all(|c| span.contains(c).expect("shapes agree"))
    }

    /// Equal to `other` as a homomorphism (same modules, matrices agreeing
    /// modulo the target relations).
    pub fn agrees_with(&self, other: &ModuleMap) -> bool {
        if self.source != other.source || self.target != other.target {
            return false;
        }
        let ctx = self.matrix.ctx;
        let diff = RingMatrix::from_fn(ctx, self.matrix.rows(), self.matrix.cols(), |i, j| {
            ctx.sub(self.matrix.get(i, j), other.matrix.get(i, j))
        });
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix: diff }.is_zero_map()
    }

    /// Basis of `{x ∈ R^{g_source} : matrix·x ∈ span(target relations)}`,
    /// the preimage of the kernel in the free module over the source.
    pub fn lifted_kernel(&self) -> RingMatrix {
        let stacked = self.matrix.hcat(self.target.relations()).expect("row counts agree");
        let k = kernel_basis(&stacked);
        column_span_basis(&k.select_rows(0..self.source.generators()))
    }

    pub fn parts(&self) -> MapParts {
        let lifted = self.lifted_kernel();
        let kernel = subquotient(&lifted, self.source.relations()).expect("source relations lie in the kernel");
        let image = FgModule::new(self.source.generators(), lifted).expect("shape");
        let cokernel = FgModule::new(
            self.target.generators(),
            self.target.relations().hcat(&self.matrix).expect("row counts agree"),
        )
        .expect("shape");
        MapParts { kernel, image, cokernel }
    }

    pub fn is_injective(&self) -> bool {
        self.parts().kernel.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.parts().cokernel.is_zero()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": self.matrix.to_json(),
        })
    }
}

/// The module `span(basis) / span(sub)`, presented on the columns of
/// `basis`. The columns of `basis` must be linearly independent and every
/// column of `sub` must lie in their span.
pub fn subquotient(basis: &RingMatrix, sub: &RingMatrix) -> Result<FgModule> {
    let span = ColumnSpan::new(basis);
    let mut columns = Vec::with_capacity(sub.cols());
    for c in sub.columns() {
        match span.solve(&c)? {
            Some(x) => columns.push(x),
            None => return Err(Error::Invalid("submodule not contained in the ambient span".into())),
        }
    }
    FgModule::new(basis.cols(), RingMatrix::from_columns(basis.ctx, basis.cols(), &columns))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiAdditivityReport {
    pub len_n: Ordinal,
    pub len_m: Ordinal,
    pub len_q: Ordinal,
    /// `len Q + len N`.
    pub lower: Ordinal,
    /// `len Q ⊕ len N`.
    pub upper: Ordinal,
    pub lower_holds: bool,
    pub upper_holds: bool,
    /// Whether `len M` equals the upper bound, when the sequence is known to
    /// split; `None` if no retraction was given or found.
    pub split_equality: Option<bool>,
}

/// Checks `0 → N → M → Q → 0` for exactness and reports both length bounds.
///
/// A retraction `M → N` may be supplied; otherwise one is searched for when
/// `M` is finite with at most `bound` elements.
pub fn verify_semi_additivity(
    n_incl: &ModuleMap,
    q_proj: &ModuleMap,
    retraction: Option<&ModuleMap>,
    bound: usize,
) -> Result<SemiAdditivityReport> {
    if n_incl.target != q_proj.source {
        return Err(Error::NotExact("maps do not share the middle module".into()));
    }
    if !n_incl.is_injective() {
        return Err(Error::NotExact("first map is not injective".into()));
    }
    if !q_proj.is_surjective() {
        return Err(Error::NotExact("second map is not surjective".into()));
    }
    if !q_proj.compose(n_incl)?.is_zero_map() {
        return Err(Error::NotExact("composition is not zero".into()));
    }
    let m = &n_incl.target;
    let image_span = ColumnSpan::new(&n_incl.matrix.hcat(m.relations())?);
    for c in q_proj.lifted_kernel().columns() {
        if !image_span.contains(&c)? {
            return Err(Error::NotExact("kernel larger than image".into()));
        }
    }
    let (len_n, len_m, len_q) = (n_incl.source.length(), m.length(), q_proj.target.length());
    let lower = len_q.ord_sum(&len_n);
    let upper = len_q.shuffle_sum(&len_n);
    let split = match retraction {
        Some(r) => {
            if r.source != *m || r.target != n_incl.source {
                return Err(Error::Invalid("retraction has the wrong modules".into()));
            }
            if !r.compose(n_incl)?.agrees_with(&ModuleMap::identity(&n_incl.source)) {
                return Err(Error::Invalid("retraction does not restrict to the identity".into()));
            }
            true
        }
        None => match FiniteModule::new(m, bound) {
            Ok(fm) => fm.has_complement(&fm.submodule_generated_by_columns(&n_incl.matrix)),
            Err(_) => false,
        },
    };
    Ok(SemiAdditivityReport {
        lower_holds: lower <= len_m,
        upper_holds: len_m <= upper,
        split_equality: split.then(|| len_m == upper),
        len_n,
        len_m,
        len_q,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::RingContext;

    const Z: RingContext = RingContext::Integers;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn cyc(n: i64) -> FgModule {
        FgModule::cyclic(Z, Z.from_i64(n))
    }

    fn mat(r: usize, c: usize, v: &[i64]) -> RingMatrix {
        RingMatrix::from_i64(Z, r, c, v)
    }

    #[test]
    fn make_map_examples() {
        assert!(ModuleMap::new(cyc(2), cyc(4), mat(1, 1, &[2])).is_ok());
        assert_eq!(ModuleMap::new(cyc(2), cyc(4), mat(1, 1, &[1])), Err(Error::NotWellDefined { column: 0 }));
        let m = FgModule::from_parts(Z, 1, &[Z.from_i64(6)]);
        assert!(ModuleMap::new(m.clone(), m.clone(), RingMatrix::identity(Z, 2)).is_ok());
        assert!(matches!(ModuleMap::new(cyc(2), cyc(4), mat(1, 2, &[2, 0])), Err(Error::Shape(_))));
    }

    #[test]
    fn parts_examples() {
        let z1 = FgModule::free(Z, 1);
        let p = ModuleMap::new(z1.clone(), z1.clone(), mat(1, 1, &[2])).unwrap().parts();
        assert!(p.kernel.is_zero());
        assert!(p.image.is_isomorphic(&z1));
        assert!(p.cokernel.is_isomorphic(&cyc(2)));

        let m = FgModule::from_parts(Z, 1, &[Z.from_i64(3)]);
        let n = cyc(5);
        let p = ModuleMap::zero(&m, &n).parts();
        assert!(p.kernel.is_isomorphic(&m));
        assert!(p.image.is_zero());
        assert!(p.cokernel.is_isomorphic(&n));

        let z2 = FgModule::free(Z, 2);
        let p = ModuleMap::new(z2, z1.clone(), mat(1, 2, &[1, 1])).unwrap().parts();
        assert!(p.kernel.is_isomorphic(&z1));
        assert!(p.image.is_isomorphic(&z1));
        assert!(p.cokernel.is_zero());
    }

    #[test]
    fn torsion_kernel() {
        // Z/12 → Z/12, multiplication by 4: kernel 3Z/12 ≅ Z/4, image ≅ Z/3
        let p = ModuleMap::new(cyc(12), cyc(12), mat(1, 1, &[4])).unwrap().parts();
        assert!(p.kernel.is_isomorphic(&cyc(4)));
        assert!(p.image.is_isomorphic(&cyc(3)));
        assert!(p.cokernel.is_isomorphic(&cyc(4)));
    }

    #[test]
    fn semi_additivity_examples() {
        let z1 = FgModule::free(Z, 1);
        let n = ModuleMap::new(z1.clone(), z1.clone(), mat(1, 1, &[2])).unwrap();
        let q = ModuleMap::new(z1.clone(), cyc(2), mat(1, 1, &[1])).unwrap();
        let r = verify_semi_additivity(&n, &q, None, 64).unwrap();
        assert_eq!((r.lower.clone(), r.len_m.clone(), r.upper.clone()), (o("w"), o("w"), o("w+1")));
        assert!(r.lower_holds && r.upper_holds);
        assert_eq!(r.split_equality, None);

        let m = FgModule::from_parts(Z, 1, &[Z.from_i64(2)]);
        let n = ModuleMap::new(z1.clone(), m.clone(), mat(2, 1, &[1, 0])).unwrap();
        let q = ModuleMap::new(m.clone(), cyc(2), mat(1, 2, &[0, 1])).unwrap();
        let retract = ModuleMap::new(m.clone(), z1.clone(), mat(1, 2, &[1, 0])).unwrap();
        let r = verify_semi_additivity(&n, &q, Some(&retract), 64).unwrap();
        assert_eq!(r.len_m, o("w+1"));
        assert_eq!(r.split_equality, Some(true));

        let m = cyc(6);
        let r = verify_semi_additivity(&ModuleMap::identity(&m), &ModuleMap::zero(&m, &FgModule::zero(Z)), None, 64)
            .unwrap();
        assert_eq!((r.lower, r.upper, r.split_equality), (o("2"), o("2"), Some(true)));
    }

    #[test]
    fn finite_split_search() {
        // 0 → Z/2 → Z/4 → Z/2 → 0 does not split; 0 → Z/2 → Z/6 → Z/3 → 0 does.
        let n = ModuleMap::new(cyc(2), cyc(4), mat(1, 1, &[2])).unwrap();
        let q = ModuleMap::new(cyc(4), cyc(2), mat(1, 1, &[1])).unwrap();
        let r = verify_semi_additivity(&n, &q, None, 64).unwrap();
        assert_eq!(r.split_equality, None);
        assert_eq!(r.len_m, o("2"));
        let n = ModuleMap::new(cyc(2), cyc(6), mat(1, 1, &[3])).unwrap();
        let q = ModuleMap::new(cyc(6), cyc(3), mat(1, 1, &[1])).unwrap();
        let r = verify_semi_additivity(&n, &q, None, 64).unwrap();
        assert_eq!(r.split_equality, Some(true));
    }

    #[test]
    fn rejects_non_exact() {
        let z1 = FgModule::free(Z, 1);
        let n = ModuleMap::new(z1.clone(), z1.clone(), mat(1, 1, &[4])).unwrap();
        let q = ModuleMap::new(z1.clone(), cyc(2), mat(1, 1, &[1])).unwrap();
        assert!(matches!(verify_semi_additivity(&n, &q, None, 64), Err(Error::NotExact(_))));
    }
}
