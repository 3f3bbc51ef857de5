//! Problem files: a JSON description of a ring, the equations of `C`, an
//! optional `X` and an optional branch parametrization.

use std::fmt;
use std::path::Path;

use multilog_core::algebra::{Polynomial, Rational, RingContext, TermOrder};
use multilog_core::curves::{Branch, BranchParametrization};
use multilog_core::logarithmic::LogProblem;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    #[default]
    Global,
    Local,
}

impl From<Order> for TermOrder {
    fn from(o: Order) -> TermOrder {
        match o {
            Order::Global => TermOrder::Global,
            Order::Local => TermOrder::Local,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingBlock {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
    #[serde(default)]
    pub order: Order,
}

/// Each branch lists its coordinates as polynomials in `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrizationBlock {
    pub branches: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_length: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor_bound: Option<u32>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub ring: RingBlock,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parametrization: Option<ParametrizationBlock>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

/// A problem-file error, positioned at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for Diagnostic {}

fn line_column(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Finds the `nth` string literal equal to `value` after the key `key`.
/// Falls back to the start of the key, or of the file.
fn locate(src: &str, key: &str, value: &str, nth: usize) -> usize {
    let quoted_key = format!("\"{}\"", key);
    let start = src.find(&quoted_key).unwrap_or(0);
    let literal = serde_json::to_string(value).unwrap_or_default();
    let mut from = start;
    for _ in 0..=nth {
        match src[from..].find(&literal) {
            Some(i) => from += i + 1,
            None => return start,
        }
    }
    from - 1
}

/// A problem file whose polynomials have been parsed in its ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub id: Option<String>,
    pub description: Option<String>,
    pub ctx: RingContext,
    pub c: Vec<Polynomial>,
    pub x: Option<Vec<Polynomial>>,
    pub parametrization: Option<BranchParametrization>,
    /// Explicit truncation of the parametrization block, if any.
    pub param_truncation: Option<u32>,
    pub options: Options,
}

pub const DEFAULT_CONDUCTOR_BOUND: u32 = 16;

impl Problem {
    pub fn parse_str(src: &str) -> Result<Problem, Diagnostic> {
        let file: ProblemFile = serde_json::from_str(src).map_err(|e| Diagnostic {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Problem::from_file(&file, src)
    }

    pub fn load(path: &Path) -> Result<Problem, Diagnostic> {
        let src = std::fs::read_to_string(path).map_err(|e| Diagnostic {
            line: 0,
            column: 0,
            message: format!("{}: {}", path.display(), e),
        })?;
        Problem::parse_str(&src)
    }

    /// Validates `file`; `src` is the text it came from, used for positions.
    pub fn from_file(file: &ProblemFile, src: &str) -> Result<Problem, Diagnostic> {
        let at = |offset: usize, message: String| {
            let (line, column) = line_column(src, offset);
            Diagnostic { line, column, message }
        };
        let ring = &file.ring;
        let weights = ring.weights.clone().unwrap_or_else(|| vec![1; ring.vars.len()]);
        let ctx = RingContext::new(&ring.vars, &weights, ring.order.into())
            .map_err(|e| at(locate(src, "ring", "", 0), e.to_string()))?;
        if file.c.is_empty() {
            return Err(at(locate(src, "C", "", 0), "the C block has no equations".into()));
        }
        let polys = |key: &str, list: &[String]| -> Result<Vec<Polynomial>, Diagnostic> {
            let mut out = Vec::new();
            for (i, s) in list.iter().enumerate() {
                let nth = list[..i].iter().filter(|t| *t == s).count();
                let p = ctx.parse(s).map_err(|e| {
                    let base = locate(src, key, s, nth);
                    let offset = if src[base..].starts_with('"') { base + 1 + e.offset } else { base };
                    at(offset, format!("in {} equation {}: {}", key, i + 1, e.message))
                })?;
                out.push(p);
            }
            Ok(out)
        };
        let c = polys("C", &file.c)?;
        let x = file.x.as_deref().map(|xs| polys("X", xs)).transpose()?;
        let param_truncation = file.parametrization.as_ref().and_then(|p| p.truncation);
        let parametrization = match &file.parametrization {
            None => None,
            Some(block) => {
                let t = RingContext::unweighted(&["t"], TermOrder::Global).expect("one variable");
                let mut branches = Vec::new();
                for (b, coords) in block.branches.iter().enumerate() {
                    if coords.len() != ctx.nvars() {
                        return Err(at(
                            locate(src, "parametrization", "", 0),
                            format!("branch {} has {} coordinates, the ring has {}", b + 1, coords.len(), ctx.nvars()),
                        ));
                    }
                    let mut parsed = Vec::new();
                    for s in coords {
                        let p = t.parse(s).map_err(|e| {
                            let base = locate(src, "parametrization", s, 0);
                            at(base + 1 + e.offset, format!("in branch {}: {}", b + 1, e.message))
                        })?;
                        let terms: Vec<(u32, Rational)> =
                            p.terms().iter().map(|(m, c)| (m.exponent(0) as u32, c.clone())).collect();
                        parsed.push(terms);
                    }
                    branches.push(Branch::new(parsed));
                }
                let truncation = param_truncation.or(file.options.truncation).unwrap_or(0);
                let param = BranchParametrization::new(branches, truncation)
                    .map_err(|e| at(locate(src, "parametrization", "", 0), e.to_string()))?;
                Some(param)
            }
        };
        Ok(Problem {
            id: file.id.clone(),
            description: file.description.clone(),
            ctx,
            c,
            x,
            parametrization,
            param_truncation,
            options: file.options.clone(),
        })
    }

    /// The file form, with every polynomial printed in normal form.
    pub fn to_file(&self) -> ProblemFile {
        let fmt = |ps: &[Polynomial]| ps.iter().map(|p| self.ctx.format(p)).collect::<Vec<_>>();
        let t = RingContext::unweighted(&["t"], TermOrder::Global).expect("one variable");
        let parametrization = self.parametrization.as_ref().map(|param| ParametrizationBlock {
            branches: param
                .branches()
                .iter()
                .map(|b| {
                    b.coords
                        .iter()
                        .map(|terms| {
                            let p =
                                terms.iter().fold(Polynomial::zero(), |acc, (e, c)| &acc + &t.var(0).pow(*e).scale(c));
                            t.format(&p)
                        })
                        .collect()
                })
                .collect(),
            truncation: self.param_truncation,
        });
        ProblemFile {
            id: self.id.clone(),
            description: self.description.clone(),
            ring: RingBlock {
                vars: self.ctx.names().to_vec(),
                weights: Some(self.ctx.weights().to_vec()),
                order: match self.ctx.order() {
                    TermOrder::Global => Order::Global,
                    TermOrder::Local => Order::Local,
                },
            },
            c: fmt(&self.c),
            x: self.x.as_deref().map(fmt),
            parametrization,
            options: self.options.clone(),
        }
    }

    pub fn print(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("problem files serialize")
    }

    /// The same problem under another monomial order.
    pub fn with_order(&self, order: TermOrder) -> Problem {
        Problem { ctx: self.ctx.with_order(order), ..self.clone() }
    }

    pub fn log_problem(&self) -> multilog_core::Result<LogProblem> {
        LogProblem::new(&self.ctx, self.c.clone(), self.x.clone())
    }

    pub fn conductor_bound(&self) -> u32 {
        self.options.conductor_bound.unwrap_or(DEFAULT_CONDUCTOR_BOUND)
    }

    /// The parametrization at truncation `T`: the explicit value if given,
    /// else `4 (B + d)` for the conductor bound `B` and the largest weighted
    /// degree `d` of the equations.
    pub fn parametrization_at(&self, override_t: Option<u32>) -> Option<BranchParametrization> {
        let param = self.parametrization.as_ref()?;
        if param.is_exact() {
            return Some(param.clone());
        }
        let t = override_t.or(self.param_truncation).or(self.options.truncation).unwrap_or_else(|| {
            let d = self.c.iter().filter_map(|p| p.max_degree(&self.ctx)).max().unwrap_or(0).max(0) as u32;
            4 * (self.conductor_bound() + d)
        });
        Some(param.with_truncation(t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PAIR: &str = r#"{
  "ring": {"vars": ["x", "y", "z"], "weights": [3, 4, 5]},
  "C": ["x*z - y^2", "x^3 - y*z"],
  "X": ["x*z - y^2", "x^3 - y*z", "x^2*y - z^2"],
  "parametrization": {"branches": [["t^3", "t^4", "t^5"]]}
}"#;

    #[test]
    fn minimal_file() {
        let p = Problem::parse_str(r#"{"ring": {"vars": ["x", "y"]}, "C": ["x*y"]}"#).unwrap();
        assert_eq!(p.c.len(), 1);
        assert_eq!(p.ctx.weights(), [1, 1]);
        assert!(p.log_problem().is_ok());
    }

    #[test]
    fn undeclared_variable_is_located() {
        let src = "{\"ring\": {\"vars\": [\"x\", \"y\"]},\n \"C\": [\"x*y - z\"]}";
        let e = Problem::parse_str(src).unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        assert!(e.message.contains("C equation 1"), "{}", e.message);
    }

    #[test]
    fn missing_block_is_reported() {
        let e = Problem::parse_str("{\"ring\": {\"vars\": [\"x\"]}}").unwrap_err();
        assert!(e.message.contains("missing field `C`"), "{}", e.message);
        assert_eq!(e.line, 1);
    }

    #[test]
    fn malformed_json_is_located() {
        let e = Problem::parse_str("{\n  \"ring\": {\"vars\": [\"x\"]},\n  \"C\": [\"x\",]\n}").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn pair_file_round_trips() {
        let p = Problem::parse_str(PAIR).unwrap();
        assert_eq!(p.x.as_ref().map(Vec::len), Some(3));
        assert!(p.parametrization.as_ref().unwrap().is_exact());
        let printed = p.print();
        let q = Problem::parse_str(&printed).unwrap();
        assert_eq!(p, q);
        assert_eq!(printed, q.print());
    }

    #[test]
    fn truncated_branches_get_a_default_order() {
        let src = r#"{"ring": {"vars": ["x", "y"], "weights": [2, 3]}, "C": ["y^2 - x^3 - x^4"],
            "parametrization": {"branches": [["t^2", "t^3 + t^5/2"]]}, "options": {"conductor_bound": 4}}"#;
        let p = Problem::parse_str(src).unwrap();
        let param = p.parametrization_at(None).unwrap();
        assert!(!param.is_exact());
        assert_eq!(param.truncation(), 4 * (4 + 8));
        assert_eq!(p.parametrization_at(Some(30)).unwrap().truncation(), 30);
    }

    #[test]
    fn branch_shape_is_checked() {
        let src = r#"{"ring": {"vars": ["x", "y"]}, "C": ["x*y"], "parametrization": {"branches": [["t"]]}}"#;
        assert!(Problem::parse_str(src).unwrap_err().message.contains("branch 1"));
    }
}
