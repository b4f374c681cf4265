//! The standard checks, one per verification family.

use std::fmt::Display;
use std::sync::Arc;

use serde::Serialize;
use springer_core::hecke::{check_relations, nil_word_consistency, Flavor, HeckeAlgebra};
use springer_core::limits::{
    chevalley_check, etingof_limit_check, generator_limit_check, toda_casimir_check, toda_flatness, toda_limit_check,
    QuadraticForm,
};
use springer_core::qconn::{
    cm_spectral_check_rank1, divisor_operator, flatness_check, module_series, quantum_product, unit_weight,
    w_equivariance_check,
};
use springer_core::roots::{length_lemma_check, CartanType, Family, RootSystem, WeylGroup};
use springer_core::shift::{
    fundamental_solution, intertwiner_check, rationality_check, shift_suite, Cocharacter, DeltaConvention,
};

use crate::registry::{Check, CheckError, Outcome, Registry};
use crate::report::Params;

fn internal(e: impl Display) -> CheckError {
    CheckError::Internal(e.to_string())
}

fn types(list: &[&str]) -> Vec<CartanType> {
    list.iter().map(|s| s.parse().expect("built-in type list is valid")).collect()
}

fn algebra(kind: CartanType) -> Result<Arc<HeckeAlgebra>, CheckError> {
    HeckeAlgebra::new(kind).map_err(internal)
}

fn var_names(alg: &HeckeAlgebra) -> Vec<String> {
    alg.var_names()
}

/// Parse `l1,...,lr;t` (simple-coroot coordinates of `s_Lambda`, then `s_t`).
pub fn parse_cocharacter(s: &str) -> Result<Cocharacter, CheckError> {
    let bad = || CheckError::Usage(format!("cocharacter must look like `1;0` or `1,0;2`, got `{s}`"));
    let (l, t) = s.trim().trim_start_matches('(').trim_end_matches(')').split_once(';').ok_or_else(bad)?;
    let lambda = l
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    let t = t.trim().parse().map_err(|_| bad())?;
    Ok(Cocharacter::new(lambda, t))
}

pub fn parse_convention(s: &str) -> Result<DeltaConvention, CheckError> {
    match s {
        "printed" => Ok(DeltaConvention::Printed),
        "shifted" => Ok(DeltaConvention::Shifted),
        "reciprocal" => Ok(DeltaConvention::Reciprocal),
        _ => Err(CheckError::Usage(format!("unknown Delta convention `{s}`"))),
    }
}

struct Roots;

#[derive(Serialize)]
struct RootsWitness {
    weyl_order: usize,
    data: springer_core::roots::RootData,
    positive_roots: Vec<String>,
    length_lemma: Vec<springer_core::roots::LengthRow>,
}

impl Check for Roots {
    fn name(&self) -> &'static str {
        "roots"
    }

    fn about(&self) -> &'static str {
        "root data, R+' and the length bound l(s_alpha) <= (2 rho, alpha^vee) - 1"
    }

    fn default_types(&self) -> Vec<CartanType> {
        CartanType::all_up_to(4)
    }

    fn run(&self, kind: CartanType, _order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let rs = RootSystem::build(kind).map_err(internal)?;
        let group = WeylGroup::new(&rs).map_err(internal)?;
        let rows = length_lemma_check(&rs, &group);
        let ok = rows.iter().all(|r| r.ok);
        let prime = rs.r_plus_prime().len();
        let summary = format!(
            "{} positive roots, {} in R+', |W| = {}, length bound {}",
            rs.positive_roots().len(),
            prime,
            group.len(),
            if ok { "sharp exactly on R+'" } else { "violated" }
        );
        let positive_roots = (0..rs.positive_roots().len()).map(|k| rs.root_label(k)).collect();
        Ok(Outcome::new(
            ok,
            summary,
            RootsWitness {
                weyl_order: group.len(),
                data: rs.to_data(None),
                positive_roots,
                length_lemma: rows,
            },
        ))
    }
}

struct HeckeRelations;

impl Check for HeckeRelations {
    fn name(&self) -> &'static str {
        "hecke-relations"
    }

    fn about(&self) -> &'static str {
        "defining and braid relations of H_t and the nil-Hecke algebra, in the algebra and on polynomials"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1", "A2", "A3", "B2", "B3", "C3", "G2"])
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let alg = algebra(kind)?;
        let g = alg.group();
        let degree = order.map_or(2 * g.element(g.longest()).length() as u32, |n| n as u32);
        let mut witness = Vec::new();
        let mut ok = true;
        let mut count = 0;
        for flavor in [Flavor::Ht, Flavor::Nil] {
            let rel = check_relations(&alg, flavor, degree).map_err(internal)?;
            ok &= rel.iter().all(|r| r.ok());
            count += rel.len();
            witness.push((format!("{flavor:?}"), rel));
        }
        let summary = format!("{count} relations on polynomials of degree <= {degree}");
        Ok(Outcome::new(ok, summary, witness))
    }
}

struct NilWords;

impl Check for NilWords {
    fn name(&self) -> &'static str {
        "nil-words"
    }

    fn about(&self) -> &'static str {
        "nil-Hecke operators are independent of the reduced word and vanish on non-reduced words"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A2", "B2", "G2"])
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let alg = algebra(kind)?;
        let g = alg.group();
        let degree = order.map_or(g.element(g.longest()).length() as u32 + 1, |n| n as u32);
        let rows = nil_word_consistency(&alg, degree).map_err(internal)?;
        let ok = rows.iter().all(|r| r.ok());
        let words: usize = rows.iter().map(|r| r.reduced_words).sum();
        let summary = format!("{} elements, {words} reduced words, degree <= {degree}", rows.len());
        Ok(Outcome::new(ok, summary, rows))
    }
}

struct Flatness;

impl Check for Flatness {
    fn name(&self) -> &'static str {
        "flatness"
    }

    fn about(&self) -> &'static str {
        "curvature [nabla_lambda, nabla_mu] of the quantum connection vanishes through height N"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A2", "B2", "G2"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(4)
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let n = order.unwrap_or(4);
        let alg = algebra(kind)?;
        let rows = flatness_check(&alg, n);
        let ok = rows.iter().all(|r| r.flat());
        let summary = format!("{} weight pairs, curvature {} through height {n}", rows.len(), if ok { "zero" } else { "nonzero" });
        Ok(Outcome::new(ok, summary, rows))
    }
}

struct Equivariance;

impl Check for Equivariance {
    fn name(&self) -> &'static str {
        "equivariance"
    }

    fn about(&self) -> &'static str {
        "w nabla_lambda w^{-1} = nabla_{w lambda} for simple reflections, exact in q"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A2", "B2"])
    }

    fn run(&self, kind: CartanType, _order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let alg = algebra(kind)?;
        let g = alg.group();
        let r = alg.rank();
        let rows: Vec<_> = (0..r)
            .flat_map(|i| (0..r).map(move |k| (i, k)))
            .map(|(i, k)| w_equivariance_check(&alg, g.simple(i), &unit_weight(r, k)))
            .collect();
        let literal = rows.iter().all(|x| x.literal);
        let gauged = rows.iter().all(|x| x.gauged);
        let cocycle = rows.iter().all(|x| x.scalar_defect == Some(x.predicted_defect));
        let summary = format!(
            "literal identity {}; defect is the scalar t (lambda, alpha_i^vee): {}; shifted by t (lambda, rho^vee): {}",
            if literal { "holds" } else { "fails" },
            cocycle,
            if gauged { "holds" } else { "fails" }
        );
        Ok(Outcome::new(literal, summary, rows))
    }
}

struct ChevalleyFlag;

impl Check for ChevalleyFlag {
    fn name(&self) -> &'static str {
        "chevalley-flag"
    }

    fn about(&self) -> &'static str {
        "quantum Chevalley operators of the flag variety: commutative, associative, Monk and quantum rules"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1", "A2", "B2"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(3)
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let alg = algebra(kind)?;
        let rep = chevalley_check(&alg, order.unwrap_or(3) as u32).map_err(internal)?;
        let squares: Vec<String> = rep
            .squares
            .iter()
            .enumerate()
            .map(|(i, terms)| {
                let rhs: Vec<String> = terms.iter().map(|(w, c)| format!("({c}) {w}")).collect();
                format!("s{0}*s{0} = {1}", i + 1, rhs.join(" + "))
            })
            .collect();
        Ok(Outcome::new(rep.ok(), squares.join("; "), rep))
    }
}

struct ChevalleyCotangent;

/// `(row, col, q-degree, coefficient)`.
type ProductEntry = (usize, usize, Vec<i64>, String);

#[derive(Serialize)]
struct CotangentWitness {
    commuting: bool,
    /// Entries of `D_{omega_k}` on `M_{a,t}`, one list per `k`.
    products: Vec<Vec<ProductEntry>>,
}

impl Check for ChevalleyCotangent {
    fn name(&self) -> &'static str {
        "chevalley-cotangent"
    }

    fn about(&self) -> &'static str {
        "quantum multiplication by divisors on M_{a,t}: structure constants and commutativity"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1", "A2", "B2"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(3)
    }

    fn run(&self, kind: CartanType, order: Option<i64>, params: &Params) -> Result<Outcome, CheckError> {
        let n = order.unwrap_or(3);
        let alg = algebra(kind)?;
        let r = alg.rank();
        let names = var_names(&alg);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let ops: Vec<_> = (0..r)
            .map(|k| module_series(&alg, &divisor_operator(&alg, &unit_weight(r, k), n)))
            .collect();
        let commuting = (0..r).all(|i| (i + 1..r).all(|j| ops[i].mul(&ops[j]).sub(&ops[j].mul(&ops[i])).is_zero()));
        let products = (0..r)
            .map(|k| {
                quantum_product(&alg, &unit_weight(r, k), n)
                    .into_iter()
                    .map(|(i, j, b, c)| (i, j, b, c.fmt_with(&names)))
                    .collect()
            })
            .collect();
        let mut summary = format!("divisor operators {} through height {n}", if commuting { "commute" } else { "do not commute" });
        if params.flag("slodowy") == Some("true") {
            summary.push_str("; Slodowy slices are not modelled, only the full cotangent bundle");
        }
        Ok(Outcome::new(commuting, summary, CotangentWitness { commuting, products }))
    }
}

struct LimitToda;

#[derive(Serialize)]
struct TodaWitness {
    generators_degenerate: bool,
    toda_flat: bool,
    limits: Vec<springer_core::limits::TodaLimitReport>,
}

impl Check for LimitToda {
    fn name(&self) -> &'static str {
        "limit-toda"
    }

    fn about(&self) -> &'static str {
        "t -> infinity limit of the rescaled quantum connection is the Toda connection"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1", "A2", "B2", "G2"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(3)
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let n = order.unwrap_or(3);
        let alg = algebra(kind)?;
        let r = alg.rank();
        let mut weights: Vec<Vec<i64>> = (0..r).map(|k| unit_weight(r, k)).collect();
        if r > 1 {
            weights.push(vec![1; r]);
        }
        let limits: Vec<_> = weights.iter().map(|l| toda_limit_check(&alg, l, n)).collect();
        let g = alg.group();
        let degree = g.element(g.longest()).length() as u32 + 1;
        let generators_degenerate = generator_limit_check(&alg, degree).map_err(internal)?;
        let toda_flat = toda_flatness(&alg, n);
        let ok = limits.iter().all(|l| l.ok()) && generators_degenerate && toda_flat;
        let surviving = limits
            .last()
            .map_or(0, |l| l.roots.iter().filter(|row| row.survives).count());
        let summary = format!(
            "limit matches through height {n} for {} weights; {surviving} root terms survive; Toda connection flat: {toda_flat}",
            limits.len()
        );
        Ok(Outcome::new(ok, summary, TodaWitness { generators_degenerate, toda_flat, limits }))
    }
}

struct LimitCm;

impl Check for LimitCm {
    fn name(&self) -> &'static str {
        "limit-cm"
    }

    fn about(&self) -> &'static str {
        "Calogero-Moser Hamiltonian degenerates to the Toda Hamiltonian; potential survives on simple roots"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1", "A2", "B2", "G2"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(4)
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let rs = RootSystem::build(kind).map_err(internal)?;
        let form = QuadraticForm::killing(&rs);
        let rep = etingof_limit_check(&rs, &form, order.unwrap_or(4)).map_err(internal)?;
        let surviving: Vec<String> = rep.roots.iter().filter(|r| r.survives).map(|r| format!("{:?}", r.root)).collect();
        let summary = format!("limit equals Toda: {}; potential survives on {}", rep.matches_toda, surviving.join(" "));
        Ok(Outcome::new(rep.ok(), summary, rep))
    }
}

struct CasimirToda;

impl Check for CasimirToda {
    fn name(&self) -> &'static str {
        "casimir-toda"
    }

    fn about(&self) -> &'static str {
        "the quadratic Toda Hamiltonian applied to 1 (x) 1 is 1 (x) C plus the simple-root potential"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1", "A2", "A3", "B2", "B3", "C3", "G2"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(3)
    }

    fn run(&self, kind: CartanType, order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        let alg = algebra(kind)?;
        let form = QuadraticForm::killing(alg.root_system());
        let rep = toda_casimir_check(&alg, &form, order.unwrap_or(3));
        let summary = rep
            .computed
            .iter()
            .map(|(b, c)| format!("q{b:?}: {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        Ok(Outcome::new(rep.ok(), summary, rep))
    }
}

struct CmSpectral;

impl Check for CmSpectral {
    fn name(&self) -> &'static str {
        "cm-spectral"
    }

    fn about(&self) -> &'static str {
        "rank-one spectral curve of D_omega on M_{a,t} with the geometric series summed"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1"])
    }

    fn run(&self, kind: CartanType, _order: Option<i64>, _params: &Params) -> Result<Outcome, CheckError> {
        if kind.family != Family::A || kind.rank != 1 {
            return Ok(Outcome::skipped("implemented in rank one only"));
        }
        let rep = cm_spectral_check_rank1().map_err(internal)?;
        let summary = format!("char poly {}", rep.char_poly);
        Ok(Outcome::new(rep.ok(), summary, rep))
    }
}

struct Shift;

#[derive(Serialize)]
struct SingleShiftWitness {
    cocharacter: String,
    convention: DeltaConvention,
    intertwiner: springer_core::shift::IntertwinerReport,
    normalization: String,
    /// `(q-degree, matrix rows)` of `c S(s)`.
    window: Vec<(i64, Vec<Vec<String>>)>,
    rational: springer_core::shift::RationalityReport,
}

impl Shift {
    fn single(&self, alg: &Arc<HeckeAlgebra>, n: i64, window: i64, params: &Params) -> Result<Outcome, CheckError> {
        let s = parse_cocharacter(params.flag("cochar").expect("checked by caller"))?;
        if s.lambda.len() != 1 {
            return Err(CheckError::Usage(format!("cocharacter {s} does not match rank 1")));
        }
        let conv = params.flag("convention").map_or(Ok(DeltaConvention::Reciprocal), parse_convention)?;
        let fs = fundamental_solution(alg, n).map_err(internal)?;
        let intertwiner = intertwiner_check(&fs, &s, conv).map_err(internal)?;
        let wide = fundamental_solution(alg, window.max(n)).map_err(internal)?;
        let rational = rationality_check(&wide, &s, conv, 2).map_err(internal)?;
        let op = fs.shift_operator(&s, conv).map_err(internal)?;
        let names = alg.var_names();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let window = op
            .series
            .iter()
            .map(|(b, m)| {
                let rows = (0..m.rows()).map(|i| m.row(i).iter().map(|c| c.fmt_with(&names)).collect()).collect();
                (b.0[0], rows)
            })
            .collect();
        let ok = intertwiner.ok() && rational.ok();
        let summary = format!(
            "S{s} with {conv:?} Delta: intertwiner {}, entries {}",
            if intertwiner.ok() { "holds" } else { "fails" },
            if rational.ok() { "rational" } else { "not rational in the window" }
        );
        Ok(Outcome::new(
            ok,
            summary,
            SingleShiftWitness {
                cocharacter: s.to_string(),
                convention: conv,
                intertwiner,
                normalization: op.normalization.fmt_with(&names),
                window,
                rational,
            },
        ))
    }
}

impl Check for Shift {
    fn name(&self) -> &'static str {
        "shift"
    }

    fn about(&self) -> &'static str {
        "shift operators S(s) = Psi(a) Delta(s) Psi(a+s)^{-1}: intertwiner, composition, rationality"
    }

    fn default_types(&self) -> Vec<CartanType> {
        types(&["A1"])
    }

    fn default_order(&self) -> Option<i64> {
        Some(3)
    }

    fn validate(&self, params: &Params) -> Result<(), CheckError> {
        if let Some(s) = params.flag("cochar") {
            parse_cocharacter(s)?;
        }
        if let Some(c) = params.flag("convention") {
            parse_convention(c)?;
        }
        if let Some(w) = params.flag("window") {
            w.parse::<i64>().map_err(|_| CheckError::Usage(format!("window must be an integer, got `{w}`")))?;
        }
        Ok(())
    }

    fn run(&self, kind: CartanType, order: Option<i64>, params: &Params) -> Result<Outcome, CheckError> {
        if kind.rank != 1 {
            return Ok(Outcome::skipped("the shift suite runs in rank one"));
        }
        let n = order.unwrap_or(3);
        let window = params.flag("window").map_or(7, |w| w.parse().expect("validated"));
        let alg = algebra(kind)?;
        if params.flag("cochar").is_some() {
            return self.single(&alg, n, window, params);
        }
        let rep = shift_suite(&alg, n, window.max(n), &DeltaConvention::ALL).map_err(internal)?;
        let per: Vec<String> = rep
            .conventions
            .iter()
            .map(|c| {
                format!(
                    "{:?}: identities {}, rational {}",
                    c.convention,
                    if c.identities_ok() { "hold" } else { "fail" },
                    if c.rational() { "yes" } else { "no" }
                )
            })
            .collect();
        let summary = format!("passing convention {:?}; {}", rep.passing(), per.join("; "));
        Ok(Outcome::new(rep.ok(), summary, rep))
    }
}

/// Registry with every standard check.
pub fn standard_registry() -> Registry {
    let mut reg = Registry::new();
    reg.register(Box::new(Roots));
    reg.register(Box::new(HeckeRelations));
    reg.register(Box::new(NilWords));
    reg.register(Box::new(Flatness));
    reg.register(Box::new(Equivariance));
    reg.register(Box::new(ChevalleyFlag));
    reg.register(Box::new(ChevalleyCotangent));
    reg.register(Box::new(LimitToda));
    reg.register(Box::new(LimitCm));
    reg.register(Box::new(CasimirToda));
    reg.register(Box::new(CmSpectral));
    reg.register(Box::new(Shift));
    reg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cocharacter_syntax() {
        assert_eq!(parse_cocharacter("1;0").unwrap(), Cocharacter::new(vec![1], 0));
        assert_eq!(parse_cocharacter("(1,-2;3)").unwrap(), Cocharacter::new(vec![1, -2], 3));
        assert!(parse_cocharacter("1,0").is_err());
        assert!(parse_cocharacter("a;0").is_err());
    }

    #[test]
    fn registry_names_are_unique_and_sorted() {
        let reg = standard_registry();
        let names: Vec<_> = reg.names().collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(names.len(), 12);
    }
}
