//! 4-manifold models and single-manifold cone predicates.
//!
//! A [`FourManifoldModel`] packages an intersection lattice with the data the
//! cone predicates consume: canonical class, stored exceptional classes, b+,
//! b1, minimality, an optional distinguished fiber class and an optional
//! torus-bundle table tag. Every predicate returns a [`ConeVerdict`] carrying
//! a certificate that can be re-evaluated against the inputs.
//!
//! All cones here are open: boundary classes (zero square, zero pairing) are
//! non-members, and the failing inequality is recorded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{CohomClass, IntersectionLattice, Signature};
use crate::rational::Rational;

/// Rows of the torus-bundle relative-cone table. Types (e)-(h) share one tag
/// because their cone data coincide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeTableTag {
    T4,
    PrimaryKodaira,
    Hyperelliptic,
    TypeD,
    TypeEH,
}

impl ConeTableTag {
    /// The relative-cone entry of the row, as a short human-readable token.
    pub fn row_cone(self) -> &'static str {
        match self {
            ConeTableTag::T4 | ConeTableTag::PrimaryKodaira => "P^F",
            ConeTableTag::Hyperelliptic | ConeTableTag::TypeEH => "P",
            ConeTableTag::TypeD => "empty",
        }
    }
}

/// A 4-manifold model: lattice plus the cone-relevant decorations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourManifoldModel {
    name: String,
    lattice: IntersectionLattice,
    k_class: CohomClass,
    exceptional: Vec<CohomClass>,
    b_plus: usize,
    b_one: usize,
    minimal: bool,
    fiber_class: Option<CohomClass>,
    cone_table_tag: Option<ConeTableTag>,
    fiber_cone_half_space: bool,
}

pub struct ModelData {
    pub name: String,
    pub lattice: IntersectionLattice,
    pub k_class: CohomClass,
    pub exceptional: Vec<CohomClass>,
    pub b_plus: usize,
    pub b_one: usize,
    pub minimal: bool,
    pub fiber_class: Option<CohomClass>,
    pub cone_table_tag: Option<ConeTableTag>,
    pub fiber_cone_half_space: bool,
}

impl FourManifoldModel {
    /// Validates every model invariant:
    /// declared b+ against the computed signature, square -1 of each stored
    /// exceptional class, `minimal` implying an empty stored list, and square
    /// zero of the fiber class.
    pub fn new(data: ModelData) -> Result<Self> {
        let ModelData {
            name,
            lattice,
            k_class,
            exceptional,
            b_plus,
            b_one,
            minimal,
            fiber_class,
            cone_table_tag,
            fiber_cone_half_space,
        } = data;

        let bind = |c: &CohomClass| -> Result<()> {
            if c.lattice_id() != lattice.id() {
                return Err(Error::MismatchedLattice);
            }
            Ok(())
        };
        bind(&k_class)?;
        for e in &exceptional {
            bind(e)?;
        }
        if let Some(f) = &fiber_class {
            bind(f)?;
        }

        let sig = lattice.signature();
        if sig.b_plus != b_plus {
            return Err(Error::InvariantViolation {
                invariant: "b_plus",
                detail: format!(
                    "declared b_plus = {b_plus}, signature of the form gives {}",
                    sig.b_plus
                ),
            });
        }
        if b_plus == 0 {
            return Err(Error::InvariantViolation {
                invariant: "b_plus-positive",
                detail: "models must have b_plus >= 1".into(),
            });
        }
        for (i, e) in exceptional.iter().enumerate() {
            let sq = lattice.square(e)?;
            if sq != Rational::from_int(-1) {
                return Err(Error::InvariantViolation {
                    invariant: "exceptional-square",
                    detail: format!("exceptional[{i}] has square {sq}, expected -1"),
                });
            }
        }
        if minimal && !exceptional.is_empty() {
            return Err(Error::InvariantViolation {
                invariant: "minimal-no-exceptional",
                detail: "minimal models store no exceptional classes".into(),
            });
        }
        if let Some(f) = &fiber_class {
            let sq = lattice.square(f)?;
            if !sq.is_zero() {
                return Err(Error::InvariantViolation {
                    invariant: "fiber-square-zero",
                    detail: format!("fiber class has square {sq}"),
                });
            }
        }
        Ok(FourManifoldModel {
            name,
            lattice,
            k_class,
            exceptional,
            b_plus,
            b_one,
            minimal,
            fiber_class,
            cone_table_tag,
            fiber_cone_half_space,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.lattice
    }

    pub fn k_class(&self) -> &CohomClass {
        &self.k_class
    }

    pub fn exceptional(&self) -> &[CohomClass] {
        &self.exceptional
    }

    pub fn b_plus(&self) -> usize {
        self.b_plus
    }

    pub fn b_one(&self) -> usize {
        self.b_one
    }

    pub fn minimal(&self) -> bool {
        self.minimal
    }

    pub fn fiber_class(&self) -> Option<&CohomClass> {
        self.fiber_class.as_ref()
    }

    pub fn cone_table_tag(&self) -> Option<ConeTableTag> {
        self.cone_table_tag
    }

    /// Whether the relative cone of the model's own fiber class is known to
    /// be exactly {alpha in P : alpha . F > 0}. Set on catalog entries where
    /// that shape is established and propagated through good sums.
    pub fn fiber_cone_half_space(&self) -> bool {
        self.fiber_cone_half_space
    }

    pub fn signature(&self) -> Signature {
        self.lattice.signature()
    }

    /// Structural equality on the mathematical content: everything except
    /// the display name and the basis labels.
    pub fn math_eq(&self, other: &FourManifoldModel) -> bool {
        self.lattice.rank() == other.lattice.rank()
            && self.lattice.gram() == other.lattice.gram()
            && self.k_class.coeffs() == other.k_class.coeffs()
            && self.exceptional.len() == other.exceptional.len()
            && self
                .exceptional
                .iter()
                .zip(&other.exceptional)
                .all(|(a, b)| a.coeffs() == b.coeffs())
            && self.b_plus == other.b_plus
            && self.b_one == other.b_one
            && self.minimal == other.minimal
            && match (&self.fiber_class, &other.fiber_class) {
                (None, None) => true,
                (Some(a), Some(b)) => a.coeffs() == b.coeffs(),
                _ => false,
            }
            && self.cone_table_tag == other.cone_table_tag
            && self.fiber_cone_half_space == other.fiber_cone_half_space
    }

    fn bind(&self, c: &CohomClass) -> Result<()> {
        if c.lattice_id() != self.lattice.id() {
            return Err(Error::MismatchedLattice);
        }
        Ok(())
    }

    /// Membership in the positive cone P: square(alpha) > 0.
    pub fn positive_cone_contains(&self, alpha: &CohomClass) -> Result<ConeVerdict> {
        self.bind(alpha)?;
        let sq = self.lattice.square(alpha)?;
        Ok(ConeVerdict::from_inequality(
            "positive-cone",
            Scope::Exact,
            Inequality::square(sq),
        ))
    }

    /// Membership in the half-cone P^beta = {alpha in P : alpha . beta > 0},
    /// with P^0 = P by convention.
    pub fn half_cone_contains(&self, beta: &CohomClass, alpha: &CohomClass) -> Result<ConeVerdict> {
        self.bind(alpha)?;
        self.bind(beta)?;
        let sq = self.lattice.square(alpha)?;
        if !sq.is_positive() {
            return Ok(ConeVerdict::from_inequality(
                "half-cone",
                Scope::Exact,
                Inequality::square(sq),
            ));
        }
        if beta.is_zero() {
            return Ok(ConeVerdict::from_inequality(
                "half-cone",
                Scope::Exact,
                Inequality::square(sq),
            ));
        }
        let p = self.lattice.pair(alpha, beta)?;
        Ok(ConeVerdict::from_inequality(
            "half-cone",
            Scope::Exact,
            Inequality::pairing("pair(alpha, beta)", p, Relation::GreaterThanZero, beta),
        ))
    }

    /// The b+ = 1 symplectic cone: square(alpha) > 0 and |alpha . E| > 0 for
    /// every stored exceptional class E. The quantifier runs over the stored
    /// list only; the verdict scope says so unless the model is minimal.
    pub fn symplectic_cone_b1_contains(&self, alpha: &CohomClass) -> Result<ConeVerdict> {
        self.bind(alpha)?;
        if self.b_plus != 1 {
            return Err(Error::WrongBPlus {
                found: self.b_plus as u32,
            });
        }
        let scope = self.exceptional_scope();
        let sq = self.lattice.square(alpha)?;
        if !sq.is_positive() {
            return Ok(ConeVerdict::from_inequality(
                "symplectic-cone-b1",
                scope,
                Inequality::square(sq),
            ));
        }
        if let Some(v) = self.first_failing_exceptional(alpha)? {
            return Ok(ConeVerdict::from_inequality("symplectic-cone-b1", scope, v));
        }
        Ok(ConeVerdict::from_inequality(
            "symplectic-cone-b1",
            scope,
            Inequality::square(sq),
        ))
    }

    /// Relative cone with respect to the class dual to a submanifold V.
    ///
    /// Dispatch: (a) table row when the model carries a torus-bundle tag and
    /// V is its fiber; (b) the b+ = 1 formula; (c) otherwise only the upper
    /// bound {alpha in P : |alpha . E| > 0, alpha . V > 0}, flagged as such.
    pub fn relative_cone_contains(
        &self,
        v_dual: &CohomClass,
        alpha: &CohomClass,
    ) -> Result<ConeVerdict> {
        self.bind(alpha)?;
        self.bind(v_dual)?;

        if let (Some(tag), Some(fiber)) = (self.cone_table_tag, &self.fiber_class) {
            if fiber == v_dual {
                return self.table_row_verdict(tag, alpha);
            }
        }

        let (predicate, scope) = if self.b_plus == 1 {
            ("relative-cone", self.exceptional_scope())
        } else {
            ("relative-cone:upper-bound-only", Scope::UpperBoundOnly)
        };

        let sq = self.lattice.square(alpha)?;
        if !sq.is_positive() {
            return Ok(ConeVerdict::from_inequality(
                predicate,
                scope,
                Inequality::square(sq),
            ));
        }
        if let Some(v) = self.first_failing_exceptional(alpha)? {
            return Ok(ConeVerdict::from_inequality(predicate, scope, v));
        }
        let pv = self.lattice.pair(alpha, v_dual)?;
        Ok(ConeVerdict::from_inequality(
            predicate,
            scope,
            Inequality::pairing("pair(alpha, V)", pv, Relation::GreaterThanZero, v_dual),
        ))
    }

    fn table_row_verdict(&self, tag: ConeTableTag, alpha: &CohomClass) -> Result<ConeVerdict> {
        let predicate = "relative-cone:table";
        match tag {
            ConeTableTag::TypeD => Ok(ConeVerdict {
                member: false,
                predicate: predicate.into(),
                scope: Scope::Exact,
                certificate: Certificate::TableRow {
                    tag,
                    cone: tag.row_cone().into(),
                },
            }),
            ConeTableTag::T4 | ConeTableTag::PrimaryKodaira => {
                let sq = self.lattice.square(alpha)?;
                if !sq.is_positive() {
                    return Ok(ConeVerdict::from_inequality(
                        predicate,
                        Scope::Exact,
                        Inequality::square(sq),
                    ));
                }
                let fiber = self.fiber_class.as_ref().expect("tag dispatch has a fiber");
                let pf = self.lattice.pair(alpha, fiber)?;
                if !pf.is_positive() {
                    return Ok(ConeVerdict::from_inequality(
                        predicate,
                        Scope::Exact,
                        Inequality::pairing(
                            "pair(alpha, F)",
                            pf,
                            Relation::GreaterThanZero,
                            fiber,
                        ),
                    ));
                }
                Ok(ConeVerdict {
                    member: true,
                    predicate: predicate.into(),
                    scope: Scope::Exact,
                    certificate: Certificate::TableRow {
                        tag,
                        cone: tag.row_cone().into(),
                    },
                })
            }
            ConeTableTag::Hyperelliptic | ConeTableTag::TypeEH => {
                let sq = self.lattice.square(alpha)?;
                if !sq.is_positive() {
                    return Ok(ConeVerdict::from_inequality(
                        predicate,
                        Scope::Exact,
                        Inequality::square(sq),
                    ));
                }
                Ok(ConeVerdict {
                    member: true,
                    predicate: predicate.into(),
                    scope: Scope::Exact,
                    certificate: Certificate::TableRow {
                        tag,
                        cone: tag.row_cone().into(),
                    },
                })
            }
        }
    }

    /// The minimal-Kaehler-surface cone P^{c1} union P^{-c1}: square > 0 and
    /// alpha . K nonzero. A torsion canonical class is the zero vector and
    /// leaves only the square condition.
    pub fn conjecture_cone_contains(&self, alpha: &CohomClass) -> Result<ConeVerdict> {
        self.conjecture_like(alpha, "conjecture-cone")
    }

    fn conjecture_like(&self, alpha: &CohomClass, predicate: &str) -> Result<ConeVerdict> {
        self.bind(alpha)?;
        let sq = self.lattice.square(alpha)?;
        if !sq.is_positive() || self.k_class.is_zero() {
            return Ok(ConeVerdict::from_inequality(
                predicate,
                Scope::Exact,
                Inequality::square(sq),
            ));
        }
        let pk = self.lattice.pair(alpha, &self.k_class)?;
        Ok(ConeVerdict::from_inequality(
            predicate,
            Scope::Exact,
            Inequality::pairing("pair(alpha, K)", pk, Relation::NonZero, &self.k_class),
        ))
    }

    /// k(A) = (A . A - K . A) / 2, the expected count of generic points a
    /// holomorphic representative of A passes through.
    pub fn k_of_class(&self, a: &CohomClass) -> Result<Rational> {
        self.bind(a)?;
        let sq = self.lattice.square(a)?;
        let ka = self.lattice.pair(&self.k_class, a)?;
        Ok(&(&sq - &ka) / &Rational::from_int(2))
    }

    fn exceptional_scope(&self) -> Scope {
        if self.minimal {
            Scope::Exact
        } else {
            Scope::StoredExceptionalList
        }
    }

    fn first_failing_exceptional(&self, alpha: &CohomClass) -> Result<Option<Inequality>> {
        for (i, e) in self.exceptional.iter().enumerate() {
            let p = self.lattice.pair(alpha, e)?;
            if p.is_zero() {
                return Ok(Some(Inequality::pairing(
                    &format!("pair(alpha, E[{i}])"),
                    p,
                    Relation::NonZero,
                    e,
                )));
            }
        }
        Ok(None)
    }
}

/// Sources that certify the half-space shape C^V = {alpha in P : alpha.V > 0}
/// of a model's relative cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeSource {
    /// Torus-bundle table row with entry P^F.
    TableRow,
    /// Pinned on a catalog entry or propagated through a good sum.
    Pinned,
    /// b+ = 1 and minimal: the relative cone is the full half-space.
    BPlusOneMinimal,
}

/// Checks whether the relative cone of (model, v_dual) is certified to equal
/// the open half-space {alpha in P : alpha . v_dual > 0}.
///
/// Table rows answer first: a row whose cone is P or empty is definitively
/// not half-space shaped, whatever the other flags say. The pinned flag only
/// counts with an empty stored exceptional list — stored -1-spheres cut the
/// cone strictly inside the half-space. The b+ = 1 branch presumes, as the
/// callers do, that the relative cone of (M, V) is nonempty.
pub fn certify_half_space_shape(
    m: &FourManifoldModel,
    v_dual: &CohomClass,
) -> Option<ShapeSource> {
    if let (Some(tag), Some(fiber)) = (m.cone_table_tag(), m.fiber_class()) {
        if fiber == v_dual {
            return match tag {
                ConeTableTag::T4 | ConeTableTag::PrimaryKodaira => Some(ShapeSource::TableRow),
                _ => None,
            };
        }
    }
    if m.fiber_cone_half_space() && m.fiber_class() == Some(v_dual) && m.exceptional().is_empty()
    {
        return Some(ShapeSource::Pinned);
    }
    if m.b_plus() == 1 && m.minimal() {
        return Some(ShapeSource::BPlusOneMinimal);
    }
    None
}

/// Predicate handle built from the hypothesis `K = a . [V]^D` together with the
/// half-space shape of the V-cone: membership in P^{c1} union P^{-c1}.
/// Reversing the orientation of V flips the half-space, which is where the
/// second half of the union comes from.
pub struct KMultipleCone<'a> {
    model: &'a FourManifoldModel,
}

impl KMultipleCone<'_> {
    pub fn contains(&self, alpha: &CohomClass) -> Result<ConeVerdict> {
        self.model.conjecture_like(alpha, "k-multiple-cone")
    }
}

/// Builds the two-sided cone predicate for a model whose canonical class is
/// a nonzero multiple a of the dual class of V.
///
/// The half-space shape of C^V is a hypothesis: pass `shape_asserted` when
/// the caller vouches for it, otherwise it must be certifiable from the
/// model itself ([`certify_half_space_shape`]).
pub fn k_multiple_cone<'a>(
    m: &'a FourManifoldModel,
    v_dual: &CohomClass,
    a: &Rational,
    shape_asserted: bool,
) -> Result<KMultipleCone<'a>> {
    if a.is_zero() {
        return Err(Error::KMismatch("the multiple a must be nonzero".into()));
    }
    let scaled = v_dual.scale(a);
    if scaled != *m.k_class() {
        return Err(Error::KMismatch(format!(
            "k_class is {}, expected {} = {a} * V",
            m.lattice().render_class(m.k_class()),
            m.lattice().render_class(&scaled),
        )));
    }
    if !shape_asserted && certify_half_space_shape(m, v_dual).is_none() {
        return Err(Error::HypothesisNotAsserted);
    }
    Ok(KMultipleCone { model: m })
}

/// Required relation of a recorded inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "> 0")]
    GreaterThanZero,
    #[serde(rename = "!= 0")]
    NonZero,
}

impl Relation {
    pub fn holds(self, value: &Rational) -> bool {
        match self {
            Relation::GreaterThanZero => value.is_positive(),
            Relation::NonZero => !value.is_zero(),
        }
    }
}

/// A checked inequality: the quantity description, its exact value, the
/// required relation, and (for pairings) the class paired against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub description: String,
    pub lhs: Rational,
    pub required: Relation,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Rational>>,
}

impl Inequality {
    fn square(sq: Rational) -> Self {
        Inequality {
            description: "square(alpha)".into(),
            lhs: sq,
            required: Relation::GreaterThanZero,
            witness: None,
        }
    }

    fn pairing(desc: &str, value: Rational, required: Relation, against: &CohomClass) -> Self {
        Inequality {
            description: desc.into(),
            lhs: value,
            required,
            witness: Some(against.coeffs().to_vec()),
        }
    }

    pub fn holds(&self) -> bool {
        self.required.holds(&self.lhs)
    }
}

/// Certificate attached to a verdict. False verdicts carry a violated
/// inequality (or the empty table row); sum-cone memberships carry the split
/// witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    ViolatedInequality(Inequality),
    SatisfiedInequality(Inequality),
    TableRow {
        tag: ConeTableTag,
        cone: String,
    },
    SplitWitness {
        alpha_x: Vec<Rational>,
        alpha_y: Vec<Rational>,
        alpha_x_expr: String,
        alpha_y_expr: String,
        rho: Rational,
    },
}

/// Scope qualifier of a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scope {
    #[serde(rename = "exact")]
    Exact,
    #[serde(rename = "upper-bound-only")]
    UpperBoundOnly,
    #[serde(rename = "stored-exceptional-list")]
    StoredExceptionalList,
}

/// Boolean cone-membership answer plus its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeVerdict {
    pub member: bool,
    pub predicate: String,
    pub scope: Scope,
    pub certificate: Certificate,
}

impl ConeVerdict {
    fn from_inequality(predicate: &str, scope: Scope, ineq: Inequality) -> Self {
        let member = ineq.holds();
        ConeVerdict {
            member,
            predicate: predicate.into(),
            scope,
            certificate: if member {
                Certificate::SatisfiedInequality(ineq)
            } else {
                Certificate::ViolatedInequality(ineq)
            },
        }
    }
}

/// Serialized shape of a model: classes are bare coefficient arrays bound to
/// the embedded lattice on load.
#[derive(Serialize)]
struct ModelJsonOut<'a> {
    name: &'a str,
    b_plus: usize,
    b_one: usize,
    minimal: bool,
    lattice: &'a IntersectionLattice,
    k_class: Vec<Rational>,
    exceptional: Vec<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fiber_class: Option<Vec<Rational>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cone_table_tag: Option<ConeTableTag>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    fiber_cone_half_space: bool,
}

/// Raw deserialized model, not yet validated. [`RawModel::build`] runs the
/// invariant checks and reports them as typed errors.
#[derive(Deserialize)]
pub(crate) struct RawModel {
    name: String,
    b_plus: usize,
    b_one: usize,
    minimal: bool,
    lattice: crate::lattice::LatticeJson,
    k_class: Vec<Rational>,
    #[serde(default)]
    exceptional: Vec<Vec<Rational>>,
    #[serde(default)]
    fiber_class: Option<Vec<Rational>>,
    #[serde(default)]
    cone_table_tag: Option<ConeTableTag>,
    #[serde(default)]
    fiber_cone_half_space: bool,
}

impl RawModel {
    pub(crate) fn build(self) -> Result<FourManifoldModel> {
        let lattice = self.lattice.build()?;
        let bindv = |v: Vec<Rational>| CohomClass::from_raw(&lattice, v);
        let k_class = bindv(self.k_class)?;
        let exceptional = self
            .exceptional
            .into_iter()
            .map(bindv)
            .collect::<Result<Vec<_>>>()?;
        let fiber_class = self.fiber_class.map(bindv).transpose()?;
        FourManifoldModel::new(ModelData {
            name: self.name,
            lattice,
            k_class,
            exceptional,
            b_plus: self.b_plus,
            b_one: self.b_one,
            minimal: self.minimal,
            fiber_class,
            cone_table_tag: self.cone_table_tag,
            fiber_cone_half_space: self.fiber_cone_half_space,
        })
    }
}

impl Serialize for FourManifoldModel {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ModelJsonOut {
            name: &self.name,
            b_plus: self.b_plus,
            b_one: self.b_one,
            minimal: self.minimal,
            lattice: &self.lattice,
            k_class: self.k_class.coeffs().to_vec(),
            exceptional: self
                .exceptional
                .iter()
                .map(|e| e.coeffs().to_vec())
                .collect(),
            fiber_class: self.fiber_class.as_ref().map(|f| f.coeffs().to_vec()),
            cone_table_tag: self.cone_table_tag,
            fiber_cone_half_space: self.fiber_cone_half_space,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for FourManifoldModel {
    fn deserialize<D: serde::Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Self, D::Error> {
        RawModel::deserialize(de)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

/// Re-evaluates the certificate of a verdict against the model and the class
/// it was issued for. Returns true when the stored value matches a fresh
/// computation and the relation outcome matches the verdict.
pub fn recheck_certificate(
    m: &FourManifoldModel,
    alpha: &CohomClass,
    verdict: &ConeVerdict,
) -> Result<bool> {
    match &verdict.certificate {
        Certificate::ViolatedInequality(ineq) | Certificate::SatisfiedInequality(ineq) => {
            let fresh = match &ineq.witness {
                None => m.lattice().square(alpha)?,
                Some(w) => {
                    let against = CohomClass::from_raw(m.lattice(), w.clone())?;
                    m.lattice().pair(alpha, &against)?
                }
            };
            if fresh != ineq.lhs {
                return Ok(false);
            }
            let expected_member = matches!(verdict.certificate, Certificate::SatisfiedInequality(_));
            Ok(ineq.holds() == expected_member && verdict.member == expected_member)
        }
        Certificate::TableRow { tag, .. } => {
            // the empty row certifies any false verdict; satisfied rows are
            // re-affirmed by re-running the predicate
            if *tag == ConeTableTag::TypeD {
                return Ok(!verdict.member);
            }
            let fiber = m
                .fiber_class()
                .ok_or_else(|| Error::Internal("table verdict without fiber class".into()))?
                .clone();
            let again = m.relative_cone_contains(&fiber, alpha)?;
            Ok(again.member == verdict.member)
        }
        Certificate::SplitWitness { .. } => Ok(verdict.member),
    }
}
