//! A setting bundles the variable table, the group, and the shift monoid
//! acting on the mobile variables, together with the sign-character
//! relative invariant used for clearing denominators.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{Central, Poly, RatFunc, Rational, Substitution, VarId, VarImage, VarTable};
use crate::error::{Error, Result};
use crate::skew::ShiftOp;
use crate::symmetry::{BlockKind, GroupElement, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftMode {
    /// `x -> x - s`.
    Additive,
    /// `x -> q^(-s) x`.
    Multiplicative,
}

/// Allowed sign of one shift coordinate. `Both` marks an invertible
/// direction (a copy of Z); the others a copy of N pointing one way.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Both,
    Forward,
    Backward,
}

impl Direction {
    pub fn allows(self, s: i32) -> bool {
        match self {
            Direction::Both => true,
            Direction::Forward => s >= 0,
            Direction::Backward => s <= 0,
        }
    }

    pub fn is_invertible(self) -> bool {
        self == Direction::Both
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Both => Direction::Both,
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidSpec {
    mobile: Vec<VarId>,
    mode: ShiftMode,
    cone: Vec<Direction>,
}

impl MonoidSpec {
    pub fn new(mobile: Vec<VarId>, mode: ShiftMode, cone: Vec<Direction>) -> Result<Self> {
        if mobile.len() != cone.len() {
            return Err(Error::InvalidSetting(format!(
                "{} mobile variables but {} cone directions",
                mobile.len(),
                cone.len()
            )));
        }
        if mobile.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSetting("mobile variables must be strictly increasing".into()));
        }
        Ok(MonoidSpec { mobile, mode, cone })
    }

    pub fn dim(&self) -> usize {
        self.mobile.len()
    }

    pub fn mobile(&self) -> &[VarId] {
        &self.mobile
    }

    pub fn mode(&self) -> ShiftMode {
        self.mode
    }

    pub fn cone(&self) -> &[Direction] {
        &self.cone
    }

    pub fn coordinate_of(&self, v: VarId) -> Option<usize> {
        self.mobile.binary_search(&v).ok()
    }

    pub fn is_group(&self) -> bool {
        self.cone.iter().all(|d| d.is_invertible())
    }

    pub fn is_admissible(&self, mu: &ShiftOp) -> bool {
        mu.dim() == self.dim() && mu.coords().iter().zip(&self.cone).all(|(&s, d)| d.allows(s))
    }

    /// Same mobile set with every one-sided direction reversed.
    pub fn opposite(&self) -> MonoidSpec {
        MonoidSpec {
            mobile: self.mobile.clone(),
            mode: self.mode,
            cone: self.cone.iter().map(|d| d.opposite()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionCheck {
    pub holds: bool,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub separation: AssumptionCheck,
    pub invariance: AssumptionCheck,
    pub noetherian: AssumptionCheck,
}

#[derive(Debug, Clone)]
pub struct Setting {
    name: String,
    table: Arc<VarTable>,
    group: GroupSpec,
    monoid: MonoidSpec,
    d_sgn: RatFunc,
    invariants: Vec<Poly>,
}

impl Setting {
    /// Validates the structural assumptions: the mobile set is a union of
    /// whole blocks with a block-constant cone (so the group permutes shift
    /// coordinates), additive shifts only touch polynomial variables, and
    /// multiplicative shifts have `q` available.
    pub fn new(name: impl Into<String>, group: GroupSpec, monoid: MonoidSpec) -> Result<Self> {
        let table = Arc::clone(group.table());
        for &v in monoid.mobile() {
            if v >= table.nblock_vars() {
                return Err(Error::InvalidSetting(format!("mobile variable {} is not a block variable", table.name(v))));
            }
        }
        for b in 0..table.blocks().len() {
            let vars: Vec<VarId> = table.block_vars(b).collect();
            let coords: Vec<Option<usize>> = vars.iter().map(|&v| monoid.coordinate_of(v)).collect();
            let mobile = coords.iter().filter(|c| c.is_some()).count();
            if mobile != 0 && mobile != vars.len() {
                return Err(Error::InvalidSetting(format!(
                    "block {} is only partially mobile",
                    table.blocks()[b].id
                )));
            }
            if mobile == 0 {
                continue;
            }
            let dirs: Vec<Direction> = coords.iter().map(|c| monoid.cone()[c.unwrap()]).collect();
            if dirs.windows(2).any(|w| w[0] != w[1]) {
                return Err(Error::InvalidSetting(format!(
                    "cone directions differ inside block {}",
                    table.blocks()[b].id
                )));
            }
            if monoid.mode() == ShiftMode::Additive {
                if table.blocks()[b].laurent {
                    return Err(Error::InvalidSetting(format!(
                        "additive shifts on Laurent block {}",
                        table.blocks()[b].id
                    )));
                }
                debug_assert!(group.kinds()[b] == BlockKind::A);
            }
        }
        if monoid.mode() == ShiftMode::Multiplicative && table.central(Central::Q).is_none() {
            return Err(Error::MissingCentral("q"));
        }
        let d_sgn = group.d_sgn()?;
        let invariants = group.invariant_generators();
        Ok(Setting { name: name.into(), table, group, monoid, d_sgn, invariants })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn monoid(&self) -> &MonoidSpec {
        &self.monoid
    }

    pub fn mode(&self) -> ShiftMode {
        self.monoid.mode
    }

    pub fn dim(&self) -> usize {
        self.monoid.dim()
    }

    pub fn d_sgn(&self) -> &RatFunc {
        &self.d_sgn
    }

    pub fn invariant_generators(&self) -> &[Poly] {
        &self.invariants
    }

    /// Same setting with the opposite cone, the home of dagger images.
    pub fn opposite(&self) -> Setting {
        let mut s = self.clone();
        s.monoid = self.monoid.opposite();
        s
    }

    pub fn identity_shift(&self) -> ShiftOp {
        ShiftOp::identity(self.dim())
    }

    /// Shift by `k` along the mobile variable `v`.
    pub fn unit_shift(&self, v: VarId, k: i32) -> ShiftOp {
        let i = self.monoid.coordinate_of(v).expect("mobile variable");
        ShiftOp::unit(self.dim(), i, k)
    }

    pub fn is_admissible(&self, mu: &ShiftOp) -> bool {
        self.monoid.is_admissible(mu)
    }

    pub fn check_admissible(&self, mu: &ShiftOp) -> Result<()> {
        if self.is_admissible(mu) {
            Ok(())
        } else {
            Err(Error::InadmissibleShift { shift: mu.to_string() })
        }
    }

    pub fn shift_substitution(&self, mu: &ShiftOp) -> Substitution {
        let mut sub = Substitution::identity(&self.table);
        for (&v, &s) in self.monoid.mobile.iter().zip(mu.coords()) {
            if s == 0 {
                continue;
            }
            let image = match self.monoid.mode {
                ShiftMode::Additive => VarImage {
                    target: v,
                    scale: Rational::from_integer(1.into()),
                    q_exp: 0,
                    offset: Rational::from_integer((-s).into()),
                },
                ShiftMode::Multiplicative => VarImage {
                    target: v,
                    scale: Rational::from_integer(1.into()),
                    q_exp: -s,
                    offset: Rational::from_integer(0.into()),
                },
            };
            sub.set(v, image).expect("validated at construction");
        }
        sub
    }

    pub fn apply_shift(&self, mu: &ShiftOp, f: &RatFunc) -> RatFunc {
        if mu.is_identity() {
            return f.clone();
        }
        self.shift_substitution(mu).apply(f)
    }

    pub fn apply_shift_poly(&self, mu: &ShiftOp, p: &Poly) -> Poly {
        if mu.is_identity() {
            return p.clone();
        }
        self.shift_substitution(mu).apply_poly(p)
    }

    /// `g μ g⁻¹` as a shift vector.
    pub fn conjugate_shift(&self, g: &GroupElement, mu: &ShiftOp) -> ShiftOp {
        let mut out = vec![0; self.dim()];
        for (i, &v) in self.monoid.mobile.iter().enumerate() {
            let s = mu.coords()[i];
            if s == 0 {
                continue;
            }
            let target = self.monoid.coordinate_of(g.perm()[v]).expect("group preserves mobile blocks");
            out[target] = match self.monoid.mode {
                ShiftMode::Multiplicative => s,
                ShiftMode::Additive => s * g.signs()[v] as i32,
            };
        }
        ShiftOp::from(out)
    }

    /// Generators of the stabilizer `{g : g μ g⁻¹ = μ}`, computed blockwise
    /// from the pattern of equal shift values.
    pub fn stabilizer_generators(&self, mu: &ShiftOp) -> Vec<GroupElement> {
        let t = &self.table;
        let mut gens = Vec::new();
        for (b, kind) in self.group.kinds().iter().enumerate() {
            let vars: Vec<VarId> = t.block_vars(b).collect();
            let shifts: Vec<i32> = vars
                .iter()
                .map(|&v| self.monoid.coordinate_of(v).map_or(0, |i| mu.coords()[i]))
                .collect();
            let mut values: Vec<i32> = shifts.clone();
            values.sort_unstable();
            values.dedup();
            for val in values {
                let class: Vec<VarId> = vars
                    .iter()
                    .zip(&shifts)
                    .filter(|(_, &s)| s == val)
                    .map(|(&v, _)| v)
                    .collect();
                for w in class.windows(2) {
                    let mut g = self.group.identity();
                    let mut perm = g.perm().to_vec();
                    perm.swap(w[0], w[1]);
                    g = element(perm, g.signs().to_vec());
                    gens.push(g);
                }
            }
            if *kind == BlockKind::D {
                for j in 1..vars.len() {
                    let g = self.group.identity();
                    let mut signs = g.signs().to_vec();
                    signs[vars[0]] = -1;
                    signs[vars[j]] = -1;
                    gens.push(element(g.perm().to_vec(), signs));
                }
            }
        }
        gens
    }

    pub fn assumptions(&self) -> AssumptionReport {
        let mode = match self.monoid.mode {
            ShiftMode::Additive => "translations x -> x - s",
            ShiftMode::Multiplicative => "q-scalings x -> q^(-s) x with q transcendental",
        };
        AssumptionReport {
            separation: AssumptionCheck {
                holds: true,
                method: format!(
                    "structural: shifts act by {mode}, group elements by signed permutations without \
                     translation or q-scaling, so g = μν⁻¹ forces both to be trivial"
                ),
            },
            invariance: AssumptionCheck {
                holds: true,
                method: "structural: mobile set is a union of whole blocks with block-constant cone, \
                         so g μ g⁻¹ is again an admissible shift"
                    .into(),
            },
            noetherian: AssumptionCheck {
                holds: true,
                method: "by construction: finite group acting on a finitely generated algebra".into(),
            },
        }
    }
}

fn element(perm: Vec<VarId>, signs: Vec<i8>) -> GroupElement {
    GroupElement::from_parts(perm, signs)
}
