//! Gelfand-Zeitlin weight modules at generic characters.
//!
//! A character of the invariant subring is represented by a lifting point
//! of the block variables, up to the group action. The cyclic module
//! generated by the evaluation functional `ev_p` is explored breadth first:
//! `ev_p · X = Σ_μ x_μ(p) ev_{μ·p}` for right modules, and the same with `X†`
//! for left modules. Only generic points are handled; a vanishing
//! denominator anywhere along the way is reported as a singular character.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{ArithError, Central, Poly, RatFunc, Rational, VarId};
use crate::error::{Error, Result};
use crate::families::{Family, OrderKind};
use crate::setting::{Setting, ShiftMode};
use crate::skew::{ShiftOp, SkewElement};
use crate::symmetry::{char_key, BlockKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleSide {
    /// Row vector times matrix; generators act through `X`.
    Right,
    /// Matrix times column vector; generators act through `X†`.
    Left,
}

impl ModuleSide {
    pub fn for_kind(kind: OrderKind) -> ModuleSide {
        match kind {
            OrderKind::Principal => ModuleSide::Right,
            OrderKind::CoPrincipal => ModuleSide::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Seed,
    Shifted,
}

/// Values of the block variables, in table order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharacterPoint {
    pub coords: Vec<Rational>,
    pub provenance: Provenance,
}

impl CharacterPoint {
    pub fn seed(coords: Vec<Rational>) -> Self {
        CharacterPoint { coords, provenance: Provenance::Seed }
    }
}

pub type CharKey = Vec<Rational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleOptions {
    pub depth: usize,
    /// Value of `q` in multiplicative settings.
    pub q: Rational,
    /// Defaults to the side matching the family's order kind.
    pub side: Option<ModuleSide>,
}

impl Default for ModuleOptions {
    fn default() -> Self {
        ModuleOptions { depth: 2, q: Rational::from_integer(2.into()), side: None }
    }
}

fn check_q(q: &Rational) -> Result<()> {
    if q.is_zero() || q.abs().is_one() {
        return Err(Error::InvalidPoint(format!("q = {q} must avoid 0 and ±1")));
    }
    Ok(())
}

/// Checks length and nonvanishing of Laurent coordinates.
pub fn validate_point(setting: &Setting, p: &[Rational]) -> Result<()> {
    let t = setting.table();
    if p.len() != t.nblock_vars() {
        return Err(Error::InvalidPoint(format!("expected {} coordinates, got {}", t.nblock_vars(), p.len())));
    }
    for (v, x) in p.iter().enumerate() {
        if t.is_laurent(v) && x.is_zero() {
            return Err(Error::InvalidPoint(format!("Laurent variable {} must be nonzero", t.name(v))));
        }
    }
    Ok(())
}

/// All variable values for evaluation: block coordinates, `q` if present;
/// `u` stays unassigned.
pub fn full_assignment(setting: &Setting, p: &[Rational], q: &Rational) -> Vec<Option<Rational>> {
    let t = setting.table();
    let mut out: Vec<Option<Rational>> = p.iter().cloned().map(Some).collect();
    for &c in t.centrals() {
        out.push(match c {
            Central::Q => Some(q.clone()),
            Central::U => None,
        });
    }
    out
}

/// The point `μ·p` characterised by `γ(μ·p) = μ(γ)(p)`: additive shifts
/// subtract `s`, multiplicative ones scale by `q^{-s}`.
pub fn act_point(setting: &Setting, mu: &ShiftOp, p: &[Rational], q: &Rational) -> Vec<Rational> {
    let mut out = p.to_vec();
    for (&v, &s) in setting.monoid().mobile().iter().zip(mu.coords()) {
        if s == 0 {
            continue;
        }
        out[v] = match setting.mode() {
            ShiftMode::Additive => &out[v] - Rational::from_integer(s.into()),
            ShiftMode::Multiplicative => &out[v] * q.pow(-s),
        };
    }
    out
}

/// Orbit representative: A blocks sorted; D blocks sorted by absolute
/// value with the sign parity carried by the first coordinate.
pub fn canonicalize(setting: &Setting, p: &[Rational]) -> Vec<Rational> {
    let t = setting.table();
    let mut out = p.to_vec();
    for (b, kind) in setting.group().kinds().iter().enumerate() {
        let range = t.block_vars(b);
        let block = &mut out[range];
        match kind {
            BlockKind::A => block.sort(),
            BlockKind::D => {
                let negative = block.iter().filter(|x| x.is_negative()).count() % 2 == 1;
                for x in block.iter_mut() {
                    *x = x.abs();
                }
                block.sort();
                if negative {
                    if let Some(first) = block.first_mut() {
                        *first = -first.clone();
                    }
                }
            }
        }
    }
    out
}

pub fn character_key(setting: &Setting, p: &[Rational], q: &Rational) -> Result<CharKey> {
    char_key(setting.invariant_generators(), &full_assignment(setting, p, q))
}

/// Sparse matrix with exact entries, stored as `(row, col) -> value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub label: String,
    pub entries: BTreeMap<(usize, usize), Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule {
    pub setting: String,
    pub side: ModuleSide,
    pub q: Option<Rational>,
    pub basis: Vec<CharacterPoint>,
    pub keys: Vec<CharKey>,
    /// BFS distance of each basis vector from the seed.
    pub depths: Vec<usize>,
    pub matrices: Vec<SparseMatrix>,
    /// `(key, dimension)` in order of first appearance.
    pub weights: Vec<(CharKey, usize)>,
    pub depth: usize,
    pub truncated: bool,
}

impl WeightModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, p: &[Rational]) -> Option<usize> {
        self.basis.iter().position(|b| b.coords == p)
    }
}

fn singular(setting: &Setting, den: &Poly, values: &[Option<Rational>], point: &[Rational]) -> Error {
    let t = setting.table();
    let x = |v: VarId| Poly::var(t, v);
    let mut candidates = Vec::new();
    for b in 0..t.blocks().len() {
        let vars: Vec<VarId> = t.block_vars(b).collect();
        for (i, &a) in vars.iter().enumerate() {
            for &c in &vars[i + 1..] {
                candidates.push(&x(c) - &x(a));
                candidates.push(&x(c) + &x(a));
            }
        }
    }
    for v in 0..t.nblock_vars() {
        for w in v + 1..t.nblock_vars() {
            candidates.push(&x(w) - &x(v));
        }
    }
    let factor = candidates
        .into_iter()
        .find(|c| c.evaluate(values).map(|z| z.is_zero()).unwrap_or(false) && den.try_div(c).is_some())
        .unwrap_or_else(|| den.clone());
    let point = point.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    Error::SingularCharacter { factor: factor.to_string(), point: format!("({point})") }
}

fn eval_coeff(setting: &Setting, c: &RatFunc, p: &[Rational], q: &Rational) -> Result<Rational> {
    let values = full_assignment(setting, p, q);
    match c.evaluate(&values) {
        Ok(v) => Ok(v),
        Err(ArithError::DenominatorVanishes { .. }) => Err(singular(setting, c.den(), &values, p)),
        Err(e) => Err(e.into()),
    }
}

/// Breadth-first truncation of the cyclic module generated by the seed.
/// New basis vectors come from nonzero matrix entries only; vectors at the
/// final depth are evaluated but not expanded, and `truncated` records
/// whether any of their images left the basis.
pub fn build_cyclic_module(
    setting: &Setting,
    generators: &[SkewElement],
    labels: &[String],
    seed: &[Rational],
    side: ModuleSide,
    depth: usize,
    q: &Rational,
) -> Result<WeightModule> {
    validate_point(setting, seed)?;
    let multiplicative = setting.mode() == ShiftMode::Multiplicative;
    if multiplicative {
        check_q(q)?;
    }
    let ops: Vec<SkewElement> = match side {
        ModuleSide::Right => generators.to_vec(),
        ModuleSide::Left => generators.iter().map(|x| x.dagger(setting)).collect(),
    };
    let start = canonicalize(setting, seed);
    let mut index: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut basis = vec![CharacterPoint::seed(start.clone())];
    let mut depths = vec![0];
    index.insert(start, 0);
    let mut matrices: Vec<SparseMatrix> = labels
        .iter()
        .map(|l| SparseMatrix { label: l.clone(), entries: BTreeMap::new() })
        .collect();
    let mut truncated = false;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let p = basis[i].coords.clone();
        let expand = depths[i] < depth;
        for (g, x) in ops.iter().enumerate() {
            let mut row: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
            for (mu, c) in x.terms() {
                let v = eval_coeff(setting, c, &p, q)?;
                if v.is_zero() {
                    continue;
                }
                let target = canonicalize(setting, &act_point(setting, mu, &p, q));
                *row.entry(target).or_insert_with(Rational::zero) += v;
            }
            for (target, v) in row {
                if v.is_zero() {
                    continue;
                }
                let j = match index.get(&target) {
                    Some(&j) => j,
                    None if expand => {
                        let j = basis.len();
                        index.insert(target.clone(), j);
                        basis.push(CharacterPoint { coords: target, provenance: Provenance::Shifted });
                        depths.push(depths[i] + 1);
                        queue.push_back(j);
                        j
                    }
                    None => {
                        truncated = true;
                        continue;
                    }
                };
                let key = match side {
                    ModuleSide::Right => (i, j),
                    ModuleSide::Left => (j, i),
                };
                matrices[g].entries.insert(key, v);
            }
        }
    }
    let mut keys = Vec::with_capacity(basis.len());
    let mut weights: Vec<(CharKey, usize)> = Vec::new();
    for b in &basis {
        let k = character_key(setting, &b.coords, q)?;
        match weights.iter_mut().find(|(w, _)| *w == k) {
            Some(entry) => entry.1 += 1,
            None => weights.push((k.clone(), 1)),
        }
        keys.push(k);
    }
    Ok(WeightModule {
        setting: setting.name().to_string(),
        side,
        q: multiplicative.then(|| q.clone()),
        basis,
        keys,
        depths,
        matrices,
        weights,
        depth,
        truncated,
    })
}

/// Module for a family with its natural side unless overridden.
pub fn build_family_module(family: &Family, seed: &[Rational], opts: &ModuleOptions) -> Result<WeightModule> {
    let side = opts.side.unwrap_or_else(|| ModuleSide::for_kind(family.order_kind()));
    build_cyclic_module(&family.setting, &family.generators, &family.labels, seed, side, opts.depth, &opts.q)
}

#[derive(Debug, Clone, Serialize)]
struct BasisRecord {
    index: usize,
    coords: Vec<String>,
    key: Vec<String>,
    depth: usize,
    provenance: Provenance,
}

#[derive(Debug, Clone, Serialize)]
struct MatrixRecord {
    generator: String,
    nonzeros: usize,
    entries: Vec<(usize, usize, String)>,
}

#[derive(Debug, Clone, Serialize)]
struct WeightRecord {
    key: Vec<String>,
    dimension: usize,
}

#[derive(Debug, Clone, Serialize)]
struct Report {
    kind: &'static str,
    setting: String,
    side: ModuleSide,
    convention: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    q: Option<String>,
    depth: usize,
    truncated: bool,
    dimension: usize,
    basis: Vec<BasisRecord>,
    matrices: Vec<MatrixRecord>,
    weights: Vec<WeightRecord>,
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

impl WeightModule {
    /// JSON report with sparse matrices as `(row, col, value)` triplets.
    pub fn to_json(&self) -> String {
        let report = Report {
            kind: "cyclic module truncation",
            setting: self.setting.clone(),
            side: self.side,
            convention: match self.side {
                ModuleSide::Right => "right module: row vector times matrix, entry (i, j) is the coefficient of basis j in (basis i)·X",
                ModuleSide::Left => "left module: matrix times column vector, entry (j, i) is the coefficient of basis j in X·(basis i)",
            },
            q: self.q.as_ref().map(|q| q.to_string()),
            depth: self.depth,
            truncated: self.truncated,
            dimension: self.dim(),
            basis: self
                .basis
                .iter()
                .enumerate()
                .map(|(i, b)| BasisRecord {
                    index: i,
                    coords: strings(&b.coords),
                    key: strings(&self.keys[i]),
                    depth: self.depths[i],
                    provenance: b.provenance,
                })
                .collect(),
            matrices: self
                .matrices
                .iter()
                .map(|m| MatrixRecord {
                    generator: m.label.clone(),
                    nonzeros: m.entries.len(),
                    entries: m.entries.iter().map(|(&(i, j), v)| (i, j, v.to_string())).collect(),
                })
                .collect(),
            weights: self
                .weights
                .iter()
                .map(|(k, d)| WeightRecord { key: strings(k), dimension: *d })
                .collect(),
        };
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }

    /// Weight table: one row per character key.
    pub fn weights_csv(&self) -> String {
        let mut s = String::from("key,dimension\n");
        for (k, d) in &self.weights {
            s.push_str(&format!("{},{}\n", strings(k).join(";"), d));
        }
        s
    }
}
