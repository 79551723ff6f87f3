//! Executes parsed statements against the kernel and collects report lines.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use diffleaf::algebra::{
    format_fraction, hs_from_derivation, parse_fraction, parse_poly, Coefficient, Derivation, Field,
    HasseSchmidtDerivation, Poly, Ring, RingRef,
};
use diffleaf::constants::{
    constants_comparison_report, extend_constant, is_constant_fraction, verify_lemma_4_3, verify_prop_4_2,
    verify_theta_lemma, DEFAULT_EXTENSION_ORDER,
};
use diffleaf::differential::{
    diff_closure, functoriality_check, hs_trajectory, is_differential_ideal, trajectory, TrajectoryResult,
};
use diffleaf::groebner::Ideal;
use diffleaf::schemes::projective::univariate_poly;
use diffleaf::schemes::{
    cf_topology_laws, greatest_invariant_closed, is_invariant_open, make_affine, projective_field_from_matrix,
    projective_rational_leaves, u_delta, AffineDiffScheme, OpenSet, ProjectiveVectorField,
};

use crate::ast::{Command, Expr, FieldSpec, IdealRef, OpenSpec, Statement};
use crate::parser::Located;

/// Default truncation order for `hs h from d`.
pub const DEFAULT_HS_ORDER: usize = 8;
/// Default jet order for `verify lemma43`.
pub const DEFAULT_LEMMA43_ORDER: usize = 2;

/// Global defaults that commands may override.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub deg: Option<u32>,
    pub rounds: Option<usize>,
    pub jet_order: Option<usize>,
}

/// One report line: `NAME: value [status]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry {
    /// 1-based index of the statement in the script.
    pub index: usize,
    pub line: usize,
    pub name: String,
    pub value: String,
    pub status: Option<String>,
    pub ok: bool,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.value)?;
        if let Some(s) = &self.status {
            write!(f, " [{s}]")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub exit_code: i32,
}

impl Report {
    pub fn to_text(&self) -> String {
        self.entries.iter().map(|e| format!("{e}\n")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Debug, Clone)]
enum Vf {
    Der(Derivation),
    Hs(HasseSchmidtDerivation),
}

#[derive(Debug, Clone)]
struct Outcome {
    value: String,
    status: Option<String>,
    /// Whether the answer counts as "true" for `assert`.
    truth: Option<bool>,
}

impl Outcome {
    fn boolean(b: bool) -> Outcome {
        Outcome { value: b.to_string(), status: None, truth: Some(b) }
    }

    fn with_status(mut self, s: impl Into<String>) -> Outcome {
        self.status = Some(s.into());
        self
    }
}

type Res<T> = Result<T, String>;

fn core<T>(r: diffleaf::Result<T>) -> Res<T> {
    r.map_err(|e| e.to_string())
}

/// Named objects plus the log of report lines.
#[derive(Debug, Default)]
pub struct Session {
    options: Options,
    rings: BTreeMap<String, RingRef>,
    fields: BTreeMap<String, Vf>,
    ideals: BTreeMap<String, Ideal>,
    schemes: BTreeMap<String, AffineDiffScheme>,
    opens: BTreeMap<String, OpenSet>,
    projs: BTreeMap<String, ProjectiveVectorField>,
    last_ring: Option<String>,
    last_scheme: Option<String>,
    log: Vec<Entry>,
}

/// Runs a parsed script with a fresh session.
pub fn run(statements: &[Located], options: Options) -> Report {
    let mut s = Session::new(options);
    for (k, st) in statements.iter().enumerate() {
        s.execute(k + 1, st);
    }
    s.report()
}

impl Session {
    pub fn new(options: Options) -> Session {
        Session { options, ..Session::default() }
    }

    pub fn log(&self) -> &[Entry] {
        &self.log
    }

    pub fn report(&self) -> Report {
        let exit_code = if self.log.iter().all(|e| e.ok) { 0 } else { 1 };
        Report { entries: self.log.clone(), exit_code }
    }

    /// Executes one statement; declarations log only on error.
    pub fn execute(&mut self, index: usize, located: &Located) {
        let line = located.line;
        match &located.statement {
            Statement::Command { assert, command } => {
                let name = command.to_string();
                let entry = match self.command(command) {
                    Ok(out) => {
                        let failed = *assert && out.truth == Some(false);
                        let status = if failed {
                            Some(match out.status {
                                Some(s) => format!("{s}; assertion failed"),
                                None => "assertion failed".into(),
                            })
                        } else {
                            out.status
                        };
                        Entry { index, line, name, value: out.value, status, ok: !failed }
                    }
                    Err(msg) => error_entry(index, line, name, msg),
                };
                self.log.push(entry);
            }
            st => {
                if let Err(msg) = self.declare(st) {
                    self.log.push(error_entry(index, line, declaration_name(st), msg));
                }
            }
        }
    }

    fn ring(&self, name: &Option<String>) -> Res<RingRef> {
        let key = name.as_ref().or(self.last_ring.as_ref()).ok_or("no ring declared")?;
        self.rings.get(key).cloned().ok_or_else(|| format!("unknown ring `{key}`"))
    }

    fn scheme(&self, name: &str) -> Res<&AffineDiffScheme> {
        self.schemes.get(name).ok_or_else(|| format!("unknown scheme `{name}`"))
    }

    fn ideal(&self, name: &str) -> Res<&Ideal> {
        self.ideals.get(name).ok_or_else(|| format!("unknown ideal `{name}`"))
    }

    fn field(&self, name: &str) -> Res<&Vf> {
        self.fields.get(name).ok_or_else(|| format!("unknown derivation `{name}`"))
    }

    fn derivation(&self, name: &str) -> Res<&Derivation> {
        match self.field(name)? {
            Vf::Der(d) => Ok(d),
            Vf::Hs(_) => Err(format!("`{name}` is a Hasse-Schmidt family, not a derivation")),
        }
    }

    fn open(&self, name: &str) -> Res<&OpenSet> {
        self.opens.get(name).ok_or_else(|| format!("unknown open set `{name}`"))
    }

    fn resolve_ideal(&self, r: &IdealRef, ring: &RingRef) -> Res<Ideal> {
        let ideal = match r {
            IdealRef::Named(n) => self.ideal(n)?.clone(),
            IdealRef::Inline(gens) => core(Ideal::new(ring, polys(gens, ring)?))?,
        };
        if ideal.ring() != ring {
            return Err(format!("ideal {r} is not in {ring}"));
        }
        Ok(ideal)
    }

    fn declare(&mut self, st: &Statement) -> Res<()> {
        match st {
            Statement::Ring { name, field, vars } => {
                fresh(&self.rings, name, "ring")?;
                let ring = core(Ring::new(field_of(*field)?, vars.clone()))?;
                self.rings.insert(name.clone(), ring);
                self.last_ring = Some(name.clone());
            }
            Statement::Der { name, ring, images } => {
                fresh(&self.fields, name, "derivation")?;
                let r = self.ring(ring)?;
                let mut named: Vec<(&str, Poly)> = Vec::new();
                for (v, e) in images {
                    if named.iter().any(|(w, _)| w == v) {
                        return Err(format!("variable `{v}` given twice"));
                    }
                    named.push((v.as_str(), poly(e, &r)?));
                }
                let d = core(Derivation::from_named(&r, &named))?;
                self.fields.insert(name.clone(), Vf::Der(d));
            }
            Statement::HsFrom { name, ring, order, from } => {
                fresh(&self.fields, name, "derivation")?;
                let d = self.derivation(from)?;
                if let Some(r) = ring {
                    if self.ring(&Some(r.clone()))? != *d.ring() {
                        return Err(format!("`{from}` is not a derivation on {r}"));
                    }
                }
                let h = core(hs_from_derivation(d, order.unwrap_or(DEFAULT_HS_ORDER)))?;
                self.fields.insert(name.clone(), Vf::Hs(h));
            }
            Statement::HsExplicit { name, ring, order, images } => {
                fresh(&self.fields, name, "derivation")?;
                let r = self.ring(ring)?;
                let mut higher = vec![Vec::new(); r.nvars()];
                let mut seen = Vec::new();
                for (v, es) in images {
                    let i = r.var_index(v).ok_or_else(|| format!("unknown variable `{v}`"))?;
                    if seen.contains(&i) {
                        return Err(format!("variable `{v}` given twice"));
                    }
                    if es.len() > *order {
                        return Err(format!("{} images for `{v}` exceed order {order}", es.len()));
                    }
                    seen.push(i);
                    higher[i] = polys(es, &r)?;
                }
                let h = core(HasseSchmidtDerivation::new(&r, *order, higher))?;
                self.fields.insert(name.clone(), Vf::Hs(h));
            }
            Statement::Ideal { name, ring, gens } => {
                fresh(&self.ideals, name, "ideal")?;
                let r = self.ring(ring)?;
                let ideal = core(Ideal::new(&r, polys(gens, &r)?))?;
                self.ideals.insert(name.clone(), ideal);
            }
            Statement::Scheme { name, ring, relations, der } => {
                fresh(&self.schemes, name, "scheme")?;
                let r = self.ring(&Some(ring.clone()))?;
                let rel = self.resolve_ideal(relations, &r)?;
                let d = self.derivation(der)?.clone();
                if *d.ring() != r {
                    return Err(format!("`{der}` is not a derivation on {ring}"));
                }
                let x = core(make_affine(rel, d))?;
                self.schemes.insert(name.clone(), x);
                self.last_scheme = Some(name.clone());
            }
            Statement::Open { name, scheme, spec } => {
                fresh(&self.opens, name, "open set")?;
                let key = scheme.as_ref().or(self.last_scheme.as_ref()).ok_or("no scheme declared")?;
                let ring = self.scheme(key)?.ring().clone();
                let u = match spec {
                    OpenSpec::Complement(i) => OpenSet::complement_of(self.resolve_ideal(i, &ring)?),
                    OpenSpec::Basic(e) => OpenSet::basic(poly(e, &ring)?),
                };
                self.opens.insert(name.clone(), u);
            }
            Statement::Proj { name, n, field, matrix } => {
                fresh(&self.projs, name, "projective field")?;
                let f = field_of(*field)?;
                let mut rows = Vec::new();
                for row in matrix {
                    let mut out = Vec::new();
                    for e in row {
                        let c = Coefficient::parse_in(&e.0, f)
                            .ok_or_else(|| format!("matrix entry `{e}` is not a constant of {f}"))?;
                        out.push(c);
                    }
                    rows.push(out);
                }
                let v = core(projective_field_from_matrix(f, *n, rows))?;
                self.projs.insert(name.clone(), v);
            }
            Statement::Command { .. } => unreachable!("commands are executed separately"),
        }
        Ok(())
    }

    fn command(&self, c: &Command) -> Res<Outcome> {
        let opts = self.options;
        match c {
            Command::IsDifferential { ideal, der } => {
                let b = core(is_differential_ideal(self.ideal(ideal)?, self.derivation(der)?))?;
                Ok(Outcome::boolean(b))
            }
            Command::Closure { ideal, der } => {
                let r = core(diff_closure(self.ideal(ideal)?, self.derivation(der)?))?;
                Ok(Outcome { value: r.closure.canonical().to_string(), status: Some(format!("rounds={}", r.rounds)), truth: None })
            }
            Command::Trajectory { ideal, der, deg, rounds } => {
                let p = self.ideal(ideal)?;
                let (deg, rounds) = (deg.or(opts.deg), rounds.or(opts.rounds));
                let r = match self.field(der)? {
                    Vf::Der(d) => core(trajectory(p, d, deg, rounds))?,
                    Vf::Hs(h) => core(hs_trajectory(p, h, deg, rounds))?,
                };
                Ok(trajectory_outcome(&r))
            }
            Command::IsLeaf { scheme, ideal } => Ok(Outcome::boolean(core(self.scheme(scheme)?.is_leaf(self.ideal(ideal)?))?)),
            Command::Udelta { scheme, open } => {
                let x = self.scheme(scheme)?;
                let hull = core(u_delta(x, self.open(open)?))?;
                let note = if core(hull.is_empty_in(x))? {
                    "empty"
                } else if core(x.lift(hull.complement_ideal()))?.is_unit() {
                    "whole scheme"
                } else {
                    "proper"
                };
                Ok(Outcome { value: hull.to_string(), status: Some(note.into()), truth: None })
            }
            Command::InvariantOpen { scheme, open } => {
                Ok(Outcome::boolean(core(is_invariant_open(self.scheme(scheme)?, self.open(open)?))?))
            }
            Command::InvariantClosed { scheme, ideal } => {
                let x = self.scheme(scheme)?;
                let i = self.resolve_ideal(ideal, x.ring())?;
                let v = core(greatest_invariant_closed(x, &i))?;
                Ok(Outcome { value: format!("V({v})"), status: None, truth: None })
            }
            Command::CfLaws { scheme, opens } => {
                let x = self.scheme(scheme)?;
                let family = opens.iter().map(|u| self.open(u).cloned()).collect::<Res<Vec<_>>>()?;
                let r = core(cf_topology_laws(x, &family))?;
                Ok(Outcome::boolean(r.holds()).with_status(format!(
                    "family={}, union={}, intersection={}",
                    r.family_size, r.union_law, r.intersection_law
                )))
            }
            Command::ProjLeaves { name } => {
                let v = self.projs.get(name).ok_or_else(|| format!("unknown projective field `{name}`"))?;
                let r = core(projective_rational_leaves(v))?;
                let value = if r.leaves.is_empty() {
                    "none".to_string()
                } else {
                    r.leaves.iter().map(|l| l.point_string()).collect::<Vec<_>>().join(", ")
                };
                let all_verified = r.leaves.iter().all(|l| l.verified);
                let tag = match (r.leaves.is_empty(), all_verified) {
                    (true, _) => "no rational leaves",
                    (false, true) => "verified",
                    (false, false) => "unverified",
                };
                let mut status = vec![tag.to_string(), format!("charpoly {}", univariate_poly(&r.char_poly, v.field()))];
                if let Some(note) = r.extension_note() {
                    status.push(note);
                }
                let truth = (!r.leaves.is_empty() && all_verified) || r.residual_irreducible;
                Ok(Outcome { value, status: Some(status.join("; ")), truth: Some(truth) })
            }
            Command::IsConstant { scheme, fraction } => {
                let x = self.scheme(scheme)?;
                let (a, b) = frac(fraction, x.ring())?;
                Ok(Outcome::boolean(core(is_constant_fraction(x, &a, &b))?))
            }
            Command::Extend { scheme, fraction, order } => {
                let x = self.scheme(scheme)?;
                let (a, b) = frac(fraction, x.ring())?;
                let e = core(extend_constant(x, &a, &b, order.unwrap_or(DEFAULT_EXTENSION_ORDER)))?;
                let orders = e.orders.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
                Ok(Outcome {
                    value: format!("{{{}}}", e.section.patch_strings().join(", ")),
                    status: Some(format!("covers udelta={}, orders={orders}", e.covers_udelta)),
                    truth: Some(e.covers_udelta),
                })
            }
            Command::CompareConstants { scheme, base, fractions } => {
                let x = self.scheme(scheme)?;
                let u = poly(base, x.ring())?;
                let fr = fractions.iter().map(|f| frac(f, x.ring())).collect::<Res<Vec<_>>>()?;
                let r = core(constants_comparison_report(x, &u, &fr, DEFAULT_EXTENSION_ORDER))?;
                let good = r.entries.iter().filter(|e| e.holds()).count();
                let bad: Vec<String> = r
                    .entries
                    .iter()
                    .filter(|e| !e.holds())
                    .map(|e| format_fraction(&e.numerator, &e.denominator))
                    .collect();
                let mut status = format!("{good}/{} round trips", r.entries.len());
                if !bad.is_empty() {
                    status.push_str(&format!("; failing {}", bad.join(", ")));
                }
                Ok(Outcome::boolean(r.holds()).with_status(status))
            }
            Command::VerifyLemma43 { order } => {
                let m = order.or(opts.jet_order).unwrap_or(DEFAULT_LEMMA43_ORDER);
                let r = core(verify_lemma_4_3(m))?;
                Ok(Outcome::boolean(r.holds()).with_status(format!("order={m}, certificate replayed={}", r.certificate.replay())))
            }
            Command::VerifyProp42 { n, order } => {
                let m = order.or(opts.jet_order).unwrap_or(n + 2);
                let r = core(verify_prop_4_2(*n, m))?;
                let mut status = format!("N={n}, order={m}, certificates={}", r.certificates.len());
                let failures = r.failures();
                if !failures.is_empty() {
                    status.push_str(&format!(", failing i={failures:?}"));
                }
                Ok(Outcome::boolean(r.holds()).with_status(status))
            }
            Command::VerifyTheta { n } => {
                let certs = core(verify_theta_lemma(*n))?;
                let ok = certs.iter().all(|c| c.replay());
                Ok(Outcome::boolean(ok).with_status(format!("certificates={}", certs.len())))
            }
            Command::VerifyHs { name } => {
                let h = match self.field(name)? {
                    Vf::Hs(h) => h,
                    Vf::Der(_) => return Err(format!("`{name}` is a derivation, not a Hasse-Schmidt family")),
                };
                match h.verify_axioms() {
                    Ok(r) => Ok(Outcome::boolean(true).with_status(format!(
                        "order={}, leibniz checks={}, iterativity checks={}",
                        r.order, r.leibniz_checks, r.iterativity_checks
                    ))),
                    Err(e) => Ok(Outcome::boolean(false).with_status(e.to_string())),
                }
            }
            Command::Functorial { source, target, images, ideal } => {
                let (d_a, d_b) = (self.derivation(source)?, self.derivation(target)?);
                let phi = polys(images, d_b.ring())?;
                let r = core(functoriality_check(&phi, self.ideal(ideal)?, d_a, d_b, opts.deg, opts.rounds))?;
                Ok(Outcome {
                    value: r.verdict.to_string(),
                    status: Some(format!(
                        "pulled trajectory {}, trajectory of pullback {}; target {}; source {}",
                        r.pulled_trajectory, r.trajectory_of_pullback, r.target.status, r.source.status
                    )),
                    truth: Some(r.verdict == diffleaf::differential::FunctorialityVerdict::Holds),
                })
            }
        }
    }
}

fn trajectory_outcome(r: &TrajectoryResult) -> Outcome {
    let mut status = r.certificate();
    if r.is_exact() {
        status.push_str("; ");
        status.push_str(&r.hypothesis());
    }
    Outcome { value: r.candidate.to_string(), status: Some(status), truth: Some(r.is_exact()) }
}

fn error_entry(index: usize, line: usize, name: String, msg: String) -> Entry {
    Entry {
        index,
        line,
        name,
        value: format!("error: {msg}"),
        status: Some(format!("statement {index}, line {line}")),
        ok: false,
    }
}

fn declaration_name(st: &Statement) -> String {
    let (kw, name) = match st {
        Statement::Ring { name, .. } => ("ring", name),
        Statement::Der { name, .. } => ("der", name),
        Statement::HsFrom { name, .. } | Statement::HsExplicit { name, .. } => ("hs", name),
        Statement::Ideal { name, .. } => ("ideal", name),
        Statement::Scheme { name, .. } => ("scheme", name),
        Statement::Open { name, .. } => ("open", name),
        Statement::Proj { name, .. } => ("proj", name),
        Statement::Command { command, .. } => return command.to_string(),
    };
    format!("{kw} {name}")
}

fn fresh<T>(map: &BTreeMap<String, T>, name: &str, kind: &str) -> Res<()> {
    if map.contains_key(name) {
        Err(format!("{kind} `{name}` already declared"))
    } else {
        Ok(())
    }
}

fn field_of(f: FieldSpec) -> Res<Field> {
    match f {
        FieldSpec::Rationals => Ok(Field::Rationals),
        FieldSpec::Prime(p) => core(Field::prime(p)),
    }
}

fn poly(e: &Expr, ring: &RingRef) -> Res<Poly> {
    parse_poly(&e.0, ring).map_err(|err| format!("in `{e}`: {err}"))
}

fn polys(es: &[Expr], ring: &RingRef) -> Res<Vec<Poly>> {
    es.iter().map(|e| poly(e, ring)).collect()
}

fn frac(e: &Expr, ring: &RingRef) -> Res<(Poly, Poly)> {
    parse_fraction(&e.0, ring).map_err(|err| format!("in `{e}`: {err}"))
}
