//! Replayable operation traces: the universal certificate format.
//!
//! A trace is a sequence of steps (`LC v`, `PIVOT x y`, `DEL …`), an optional
//! final `KEEP` set and an optional `CLAIM <family-spec>` the kept subgraph
//! must be isomorphic to.

use std::fmt;

use crate::error::Error;
use crate::families::{self, FamilySpec};
use crate::graph::Graph;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Lc(u32),
    Pivot(u32, u32),
    DeleteSet(Vec<u32>),
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct OpTrace {
    pub steps: Vec<Step>,
    /// Vertex ids (in the source graph) retained at the end; `None` keeps
    /// everything live.
    pub keep: Option<Vec<u32>>,
    pub claim: Option<FamilySpec>,
}

/// Result envelope of a replay.
#[derive(Clone, Debug)]
pub struct ReplayOutcome {
    /// The replayed graph restricted to the keep set, compacted.
    pub graph: Graph,
    /// new id -> source id for the kept vertices
    pub kept: Vec<u32>,
    /// `Some(true/false)` when the trace carries a claim.
    pub claim_ok: Option<bool>,
}

impl OpTrace {
    pub fn new() -> Self {
        OpTrace::default()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Apply the steps in order, then restrict to the keep set. A step that
    /// is undefined at its replay point (pivot on a non-edge, touching a
    /// deleted vertex) fails with the step index.
    pub fn replay(&self, source: &Graph) -> Result<ReplayOutcome, Error> {
        let mut g = source.clone();
        for (idx, step) in self.steps.iter().enumerate() {
            let res = match step {
                Step::Lc(v) => g.local_complement_mut(*v),
                Step::Pivot(x, y) => g.pivot_mut(*x, *y),
                Step::DeleteSet(xs) => xs.iter().try_for_each(|&v| g.delete_vertex_mut(v)),
            };
            res.map_err(|e| Error::Replay {
                step: idx,
                reason: e.to_string(),
            })?;
        }
        let keep: Vec<u32> = match &self.keep {
            Some(ks) => ks.clone(),
            None => g.vertices(),
        };
        for &v in &keep {
            g.check_vertex(v).map_err(|e| Error::Replay {
                step: self.steps.len(),
                reason: format!("keep set: {e}"),
            })?;
        }
        let (restricted, kept) = g.induced(&keep)?;
        let claim_ok = match &self.claim {
            Some(spec) => Some(families::matches_spec(&restricted, spec)?),
            None => None,
        };
        Ok(ReplayOutcome {
            graph: restricted,
            kept,
            claim_ok,
        })
    }

    /// Replay and demand that the claim (if any) verifies.
    pub fn replay_verified(&self, source: &Graph) -> Result<ReplayOutcome, Error> {
        let out = self.replay(source)?;
        if out.claim_ok == Some(false) {
            return Err(Error::invalid(
                "trace",
                format!(
                    "claim `{}` refuted by replay",
                    self.claim.as_ref().expect("claim present").to_text()
                ),
            ));
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<OpTrace, Error> {
        let mut t = OpTrace::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse {
                line: idx + 1,
                col: 1,
                msg,
            };
            let mut toks = line.split_whitespace();
            let head = toks.next().expect("nonempty line");
            let parse_ids = |toks: std::str::SplitWhitespace<'_>| -> Result<Vec<u32>, Error> {
                toks.map(|s| {
                    s.parse::<u32>().map_err(|_| Error::Parse {
                        line: idx + 1,
                        col: raw.find(s).map_or(1, |c| c + 1),
                        msg: format!("expected a vertex id, found `{s}`"),
                    })
                })
                .collect()
            };
            match head {
                "LC" => {
                    let ids = parse_ids(toks)?;
                    if ids.len() != 1 {
                        return Err(err("LC takes exactly one vertex".into()));
                    }
                    t.steps.push(Step::Lc(ids[0]));
                }
                "PIVOT" => {
                    let ids = parse_ids(toks)?;
                    if ids.len() != 2 {
                        return Err(err("PIVOT takes exactly two vertices".into()));
                    }
                    t.steps.push(Step::Pivot(ids[0], ids[1]));
                }
                "DEL" => {
                    let ids = parse_ids(toks)?;
                    if ids.is_empty() {
                        return Err(err("DEL needs at least one vertex".into()));
                    }
                    t.steps.push(Step::DeleteSet(ids));
                }
                "KEEP" => {
                    if t.keep.is_some() {
                        return Err(err("duplicate KEEP line".into()));
                    }
                    t.keep = Some(parse_ids(toks)?);
                }
                "CLAIM" => {
                    if t.claim.is_some() {
                        return Err(err("duplicate CLAIM line".into()));
                    }
                    let rest: Vec<&str> = toks.collect();
                    t.claim = Some(FamilySpec::parse(&rest.join(" "))?);
                }
                other => return Err(err(format!("unknown directive `{other}`"))),
            }
        }
        Ok(t)
    }
}

impl fmt::Display for OpTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for step in &self.steps {
            match step {
                Step::Lc(v) => writeln!(f, "LC {v}")?,
                Step::Pivot(x, y) => writeln!(f, "PIVOT {x} {y}")?,
                Step::DeleteSet(xs) => {
                    write!(f, "DEL")?;
                    for x in xs {
                        write!(f, " {x}")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        if let Some(keep) = &self.keep {
            write!(f, "KEEP")?;
            for v in keep {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        if let Some(claim) = &self.claim {
            writeln!(f, "CLAIM {}", claim.to_text())?;
        }
        Ok(())
    }
}

/// Owns a working graph and records every applied operation, so extractors
/// produce certificates that replay from the pristine input.
#[derive(Clone)]
pub struct TraceBuilder {
    pub graph: Graph,
    pub steps: Vec<Step>,
}

impl TraceBuilder {
    pub fn new(source: &Graph) -> Self {
        TraceBuilder {
            graph: source.clone(),
            steps: Vec::new(),
        }
    }

    pub fn lc(&mut self, v: u32) -> Result<(), Error> {
        self.graph.local_complement_mut(v)?;
        self.steps.push(Step::Lc(v));
        Ok(())
    }

    pub fn pivot(&mut self, x: u32, y: u32) -> Result<(), Error> {
        self.graph.pivot_mut(x, y)?;
        self.steps.push(Step::Pivot(x, y));
        Ok(())
    }

    pub fn delete(&mut self, xs: &[u32]) -> Result<(), Error> {
        if xs.is_empty() {
            return Ok(());
        }
        for &v in xs {
            self.graph.delete_vertex_mut(v)?;
        }
        self.steps.push(Step::DeleteSet(xs.to_vec()));
        Ok(())
    }

    /// Append another builder's steps (e.g. a sub-extraction run on the same
    /// evolving graph).
    pub fn extend(&mut self, steps: &[Step]) -> Result<(), Error> {
        for s in steps {
            match s {
                Step::Lc(v) => self.lc(*v)?,
                Step::Pivot(x, y) => self.pivot(*x, *y)?,
                Step::DeleteSet(xs) => self.delete(xs)?,
            }
        }
        Ok(())
    }

    pub fn finish(self, keep: Option<Vec<u32>>, claim: Option<FamilySpec>) -> OpTrace {
        OpTrace {
            steps: self.steps,
            keep,
            claim,
        }
    }
}
