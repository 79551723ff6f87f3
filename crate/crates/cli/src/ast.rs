//! Statements of the input language. `Display` prints the canonical form,
//! which parses back to an equal statement.

use std::fmt;

/// Source text of a polynomial (or fraction) expression, kept verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr(pub String);

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// A declared ideal or an inline generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealRef {
    Named(String),
    Inline(Vec<Expr>),
}

impl fmt::Display for IdealRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealRef::Named(n) => f.write_str(n),
            IdealRef::Inline(gens) => write!(f, "<{}>", join(gens, ", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpenSpec {
    Complement(IdealRef),
    Basic(Expr),
}

impl fmt::Display for OpenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpenSpec::Complement(i) => write!(f, "complement {i}"),
            OpenSpec::Basic(e) => write!(f, "D({e})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Ring { name: String, field: FieldSpec, vars: Vec<String> },
    Der { name: String, ring: Option<String>, images: Vec<(String, Expr)> },
    HsFrom { name: String, ring: Option<String>, order: Option<usize>, from: String },
    HsExplicit { name: String, ring: Option<String>, order: usize, images: Vec<(String, Vec<Expr>)> },
    Ideal { name: String, ring: Option<String>, gens: Vec<Expr> },
    Scheme { name: String, ring: String, relations: IdealRef, der: String },
    Open { name: String, scheme: Option<String>, spec: OpenSpec },
    Proj { name: String, n: usize, field: FieldSpec, matrix: Vec<Vec<Expr>> },
    Command { assert: bool, command: Command },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    IsDifferential { ideal: String, der: String },
    Closure { ideal: String, der: String },
    Trajectory { ideal: String, der: String, deg: Option<u32>, rounds: Option<usize> },
    IsLeaf { scheme: String, ideal: String },
    Udelta { scheme: String, open: String },
    InvariantOpen { scheme: String, open: String },
    InvariantClosed { scheme: String, ideal: IdealRef },
    CfLaws { scheme: String, opens: Vec<String> },
    ProjLeaves { name: String },
    IsConstant { scheme: String, fraction: Expr },
    Extend { scheme: String, fraction: Expr, order: Option<usize> },
    CompareConstants { scheme: String, base: Expr, fractions: Vec<Expr> },
    VerifyLemma43 { order: Option<usize> },
    VerifyProp42 { n: usize, order: Option<usize> },
    VerifyTheta { n: usize },
    VerifyHs { name: String },
    Functorial { source: String, target: String, images: Vec<Expr>, ideal: String },
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn on(ring: &Option<String>) -> String {
    ring.as_ref().map(|r| format!(" on {r}")).unwrap_or_default()
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring { name, field, vars } => write!(f, "ring {name} = {field}[{}]", vars.join(",")),
            Statement::Der { name, ring, images } => {
                let imgs: Vec<String> = images.iter().map(|(v, e)| format!("{v} -> {e}")).collect();
                write!(f, "der {name}{} : {}", on(ring), imgs.join(", "))
            }
            Statement::HsFrom { name, ring, order, from } => {
                let ord = order.map(|m| format!(" order {m}")).unwrap_or_default();
                write!(f, "hs {name}{}{ord} from {from}", on(ring))
            }
            Statement::HsExplicit { name, ring, order, images } => {
                let imgs: Vec<String> = images.iter().map(|(v, es)| format!("{v} -> [{}]", join(es, ", "))).collect();
                write!(f, "hs {name}{} order {order} : {}", on(ring), imgs.join(", "))
            }
            Statement::Ideal { name, ring, gens } => write!(f, "ideal {name}{} = <{}>", on(ring), join(gens, ", ")),
            Statement::Scheme { name, ring, relations, der } => write!(f, "scheme {name} = ({ring}, {relations}, {der})"),
            Statement::Open { name, scheme, spec } => write!(f, "open {name}{} = {spec}", on(scheme)),
            Statement::Proj { name, n, field, matrix } => {
                let rows: Vec<String> = matrix.iter().map(|r| format!("[{}]", join(r, ", "))).collect();
                write!(f, "proj {name} = P({n}, {field}, [{}])", rows.join(", "))
            }
            Statement::Command { assert, command } => {
                if *assert {
                    write!(f, "assert ")?;
                }
                write!(f, "{command}")
            }
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::IsDifferential { ideal, der } => write!(f, "is_differential {ideal} {der}"),
            Command::Closure { ideal, der } => write!(f, "closure {ideal} {der}"),
            Command::Trajectory { ideal, der, deg, rounds } => {
                write!(f, "trajectory {ideal} {der}")?;
                if let Some(d) = deg {
                    write!(f, " deg {d}")?;
                }
                if let Some(r) = rounds {
                    write!(f, " rounds {r}")?;
                }
                Ok(())
            }
            Command::IsLeaf { scheme, ideal } => write!(f, "is_leaf {scheme} {ideal}"),
            Command::Udelta { scheme, open } => write!(f, "udelta {scheme} {open}"),
            Command::InvariantOpen { scheme, open } => write!(f, "invariant? {scheme} {open}"),
            Command::InvariantClosed { scheme, ideal } => write!(f, "invariant_closed {scheme} {ideal}"),
            Command::CfLaws { scheme, opens } => {
                write!(f, "cf_laws {scheme}")?;
                for u in opens {
                    write!(f, " {u}")?;
                }
                Ok(())
            }
            Command::ProjLeaves { name } => write!(f, "proj_leaves {name}"),
            Command::IsConstant { scheme, fraction } => write!(f, "constant? {scheme} {fraction}"),
            Command::Extend { scheme, fraction, order } => {
                write!(f, "extend {scheme} {fraction}")?;
                if let Some(n) = order {
                    write!(f, " order {n}")?;
                }
                Ok(())
            }
            Command::CompareConstants { scheme, base, fractions } => {
                write!(f, "compare_constants {scheme} D({base}) {{{}}}", join(fractions, ", "))
            }
            Command::VerifyLemma43 { order } => {
                write!(f, "verify lemma43")?;
                if let Some(m) = order {
                    write!(f, " order {m}")?;
                }
                Ok(())
            }
            Command::VerifyProp42 { n, order } => {
                write!(f, "verify prop42 {n}")?;
                if let Some(m) = order {
                    write!(f, " order {m}")?;
                }
                Ok(())
            }
            Command::VerifyTheta { n } => write!(f, "verify thetalemma {n}"),
            Command::VerifyHs { name } => write!(f, "verify hs {name}"),
            Command::Functorial { source, target, images, ideal } => {
                write!(f, "functorial {source} -> {target} via [{}] at {ideal}", join(images, ", "))
            }
        }
    }
}
