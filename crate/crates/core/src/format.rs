//! Line-based text formats.
//!
//! Instances carry a header (`kind: smti|smpi`, `men: N`, `women: N`) and one
//! of two bodies:
//!
//! ```text
//! # SMTI body: ties in parentheses, better classes first
//! m1: (w2 w3) w1
//! # SMPI body: acceptable list plus explicit strict comparisons
//! m1 accepts: w1 w2 w3
//! m1 prefers: w1 > w2, w1 > w3
//! ```
//!
//! Strict profiles use `m1: w1 w2 w3` (best first), matchings and interview
//! sets one `m1 w2` pair per line, graphs a `graph <n> <m>` line followed by
//! one `u v` edge per line with vertices numbered from 1. `#` starts a comment
//! everywhere.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{IcrError, Result};
use crate::forge::SimpleGraph;
use crate::model::{AgentRef, Instance, InterviewSet, Matching, PreferenceRelation, Side, StrictProfile};
use crate::ties::tie_structure_of;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    Smti,
    Smpi,
}

impl std::str::FromStr for InstanceFormat {
    type Err = IcrError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smti" => Ok(InstanceFormat::Smti),
            "smpi" => Ok(InstanceFormat::Smpi),
            other => Err(IcrError::BadParams(format!("unknown instance format `{other}`"))),
        }
    }
}

/// A parsed instance plus the warnings produced while normalizing it.
#[derive(Debug, Clone)]
pub struct ParsedInstance {
    pub instance: Instance,
    pub warnings: Vec<String>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_agent(token: &str, line: usize) -> Result<AgentRef> {
    let token = token.trim();
    let side = match token.chars().next() {
        Some('m') | Some('M') => Side::Man,
        Some('w') | Some('W') => Side::Woman,
        _ => return Err(IcrError::parse(line, format!("expected an agent like m1 or w2, got `{token}`"))),
    };
    let number: usize = token[1..]
        .parse()
        .map_err(|_| IcrError::parse(line, format!("bad agent index in `{token}`")))?;
    if number == 0 {
        return Err(IcrError::parse(line, format!("agent indices start at 1, got `{token}`")));
    }
    Ok(AgentRef { side, index: number - 1 })
}

fn parse_candidate(token: &str, of: AgentRef, line: usize, n_other: usize) -> Result<usize> {
    let c = parse_agent(token, line)?;
    if c.side == of.side {
        return Err(IcrError::parse(line, format!("{of} cannot rank `{token}` from its own side")));
    }
    if c.index >= n_other {
        return Err(IcrError::parse(line, format!("`{token}` is outside the declared market")));
    }
    Ok(c.index)
}

fn parse_count(value: &str, line: usize) -> Result<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| IcrError::parse(line, format!("expected a count, got `{}`", value.trim())))
}

#[derive(Default)]
struct Header {
    kind: Option<InstanceFormat>,
    men: Option<usize>,
    women: Option<usize>,
}

impl Header {
    /// Consumes `line` if it is a header line.
    fn absorb(&mut self, line: &str, no: usize) -> Result<bool> {
        let Some((key, value)) = line.split_once(':') else {
            return Ok(false);
        };
        match key.trim() {
            "kind" => {
                self.kind = Some(value.parse().map_err(|_| IcrError::parse(no, "kind must be smti or smpi"))?);
            }
            "men" => self.men = Some(parse_count(value, no)?),
            "women" => self.women = Some(parse_count(value, no)?),
            _ => return Ok(false),
        }
        Ok(true)
    }
}

fn parse_relations(text: &str) -> Result<(Vec<PreferenceRelation>, Vec<PreferenceRelation>)> {
    let mut header = Header::default();
    let mut body = Vec::new();
    for (no, line) in content_lines(text) {
        if !header.absorb(line, no)? {
            body.push((no, line));
        }
    }
    let kind = header.kind.ok_or_else(|| IcrError::parse(1, "missing `kind:` header"))?;
    let n_men = header.men.ok_or_else(|| IcrError::parse(1, "missing `men:` header"))?;
    let n_women = header.women.ok_or_else(|| IcrError::parse(1, "missing `women:` header"))?;
    let mut men = vec![PreferenceRelation::default(); n_men];
    let mut women = vec![PreferenceRelation::default(); n_women];
    let mut seen = BTreeMap::new();

    for (no, line) in body {
        let (lhs, rhs) = line
            .split_once(':')
            .ok_or_else(|| IcrError::parse(no, "expected `<agent>: ...`"))?;
        let mut lhs_words = lhs.split_whitespace();
        let agent = parse_agent(lhs_words.next().unwrap_or(""), no)?;
        let keyword = lhs_words.next();
        let n_other = match agent.side {
            Side::Man => n_women,
            Side::Woman => n_men,
        };
        let slot = match agent.side {
            Side::Man => men.get_mut(agent.index),
            Side::Woman => women.get_mut(agent.index),
        }
        .ok_or_else(|| IcrError::parse(no, format!("{agent} is outside the declared market")))?;

        match (kind, keyword) {
            (InstanceFormat::Smti, None) => {
                if seen.insert((agent, "list"), no).is_some() {
                    return Err(IcrError::parse(no, format!("{agent} listed twice")));
                }
                *slot = parse_tied_list(rhs, agent, no, n_other)?;
            }
            (InstanceFormat::Smpi, Some("accepts")) => {
                if seen.insert((agent, "accepts"), no).is_some() {
                    return Err(IcrError::parse(no, format!("{agent} has two accepts lines")));
                }
                let acceptable = rhs
                    .split_whitespace()
                    .map(|t| parse_candidate(t, agent, no, n_other))
                    .collect::<Result<Vec<_>>>()?;
                let edges: Vec<_> = slot.edges().iter().copied().collect();
                *slot = PreferenceRelation::new(acceptable, edges);
            }
            (InstanceFormat::Smpi, Some("prefers")) => {
                let mut edges: Vec<_> = slot.edges().iter().copied().collect();
                for item in rhs.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (b, w) = item
                        .split_once('>')
                        .ok_or_else(|| IcrError::parse(no, format!("expected `a > b`, got `{item}`")))?;
                    edges.push((
                        parse_candidate(b, agent, no, n_other)?,
                        parse_candidate(w, agent, no, n_other)?,
                    ));
                }
                let acceptable: Vec<_> = slot.acceptable().iter().copied().collect();
                *slot = PreferenceRelation::new(acceptable, edges);
            }
            _ => {
                return Err(IcrError::parse(
                    no,
                    format!("line does not fit the `{}` body format", format_name(kind)),
                ))
            }
        }
    }
    Ok((men, women))
}

fn format_name(kind: InstanceFormat) -> &'static str {
    match kind {
        InstanceFormat::Smti => "smti",
        InstanceFormat::Smpi => "smpi",
    }
}

fn parse_tied_list(rhs: &str, agent: AgentRef, no: usize, n_other: usize) -> Result<PreferenceRelation> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut open: Option<Vec<usize>> = None;
    let spaced = rhs.replace('(', " ( ").replace(')', " ) ");
    for token in spaced.split_whitespace() {
        match token {
            "(" => {
                if open.is_some() {
                    return Err(IcrError::parse(no, "nested parentheses"));
                }
                open = Some(Vec::new());
            }
            ")" => {
                let tie = open.take().ok_or_else(|| IcrError::parse(no, "unbalanced `)`"))?;
                if tie.is_empty() {
                    return Err(IcrError::parse(no, "empty tie"));
                }
                classes.push(tie);
            }
            t => {
                let c = parse_candidate(t, agent, no, n_other)?;
                match open.as_mut() {
                    Some(tie) => tie.push(c),
                    None => classes.push(vec![c]),
                }
            }
        }
    }
    if open.is_some() {
        return Err(IcrError::parse(no, "unbalanced `(`"));
    }
    let mut all: Vec<usize> = classes.iter().flatten().copied().collect();
    all.sort_unstable();
    if all.windows(2).any(|w| w[0] == w[1]) {
        return Err(IcrError::parse(no, format!("{agent} lists a candidate twice")));
    }
    Ok(PreferenceRelation::from_classes(classes))
}

/// Reads a base instance. One-sided acceptability is dropped with a warning;
/// any other invariant breach (including non-transitivity) is an error.
pub fn parse_instance(text: &str) -> Result<ParsedInstance> {
    let (men, women) = parse_relations(text)?;
    let (instance, warnings) = Instance::normalized(men, women)?;
    Ok(ParsedInstance { instance, warnings })
}

/// Reads a refined knowledge state, which need not be transitive.
pub fn parse_refined_instance(text: &str) -> Result<Instance> {
    let (men, women) = parse_relations(text)?;
    let instance = Instance::from_parts_unchecked(men, women, false);
    let report = crate::validate_instance(&instance);
    if report.is_valid() {
        Ok(instance)
    } else {
        Err(IcrError::InvalidInstance(report.to_string()))
    }
}

fn names(side: Side, indices: impl IntoIterator<Item = usize>) -> String {
    indices
        .into_iter()
        .map(|i| AgentRef { side, index: i }.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes `instance`. `None` picks SMTI when every agent holds a weak order and
/// SMPI otherwise; asking for SMTI on a non-tie-shaped instance is an error.
pub fn write_instance(instance: &Instance, format: Option<InstanceFormat>) -> Result<String> {
    let ties: Option<Vec<_>> = instance
        .agents()
        .map(|a| tie_structure_of(instance.relation(a)))
        .collect();
    let format = match (format, &ties) {
        (Some(InstanceFormat::Smti), None) => {
            return Err(IcrError::BadParams(
                "instance has non-transitive incomparability and cannot be written as smti".into(),
            ))
        }
        (Some(f), _) => f,
        (None, Some(_)) => InstanceFormat::Smti,
        (None, None) => InstanceFormat::Smpi,
    };
    let mut out = String::new();
    writeln!(out, "kind: {}", format_name(format)).unwrap();
    writeln!(out, "men: {}", instance.n_men()).unwrap();
    writeln!(out, "women: {}", instance.n_women()).unwrap();
    for (i, agent) in instance.agents().enumerate() {
        let other = agent.side.other();
        let rel = instance.relation(agent);
        match format {
            InstanceFormat::Smti => {
                let classes = &ties.as_ref().expect("checked above")[i].classes;
                let parts: Vec<String> = classes
                    .iter()
                    .map(|class| {
                        if class.len() == 1 {
                            names(other, class.iter().copied())
                        } else {
                            format!("({})", names(other, class.iter().copied()))
                        }
                    })
                    .collect();
                let body = parts.join(" ");
                if body.is_empty() {
                    writeln!(out, "{agent}:").unwrap();
                } else {
                    writeln!(out, "{agent}: {body}").unwrap();
                }
            }
            InstanceFormat::Smpi => {
                let accepts = names(other, rel.acceptable().iter().copied());
                if accepts.is_empty() {
                    writeln!(out, "{agent} accepts:").unwrap();
                } else {
                    writeln!(out, "{agent} accepts: {accepts}").unwrap();
                }
                if !rel.edges().is_empty() {
                    let prefs: Vec<String> = rel
                        .edges()
                        .iter()
                        .map(|&(b, w)| format!("{} > {}", agent.candidate(b), agent.candidate(w)))
                        .collect();
                    writeln!(out, "{agent} prefers: {}", prefs.join(", ")).unwrap();
                }
            }
        }
    }
    Ok(out)
}

/// Reads a strict profile. `men:`/`women:` headers are optional; otherwise
/// the counts are the largest agent indices mentioned.
pub fn parse_profile(text: &str) -> Result<StrictProfile> {
    let mut header = Header::default();
    let mut rows: Vec<(usize, AgentRef, Vec<AgentRef>)> = Vec::new();
    for (no, line) in content_lines(text) {
        if header.absorb(line, no)? {
            continue;
        }
        let (lhs, rhs) = line
            .split_once(':')
            .ok_or_else(|| IcrError::parse(no, "expected `<agent>: <ranked candidates>`"))?;
        let agent = parse_agent(lhs, no)?;
        let list = rhs
            .split_whitespace()
            .map(|t| parse_agent(t, no))
            .collect::<Result<Vec<_>>>()?;
        if let Some(c) = list.iter().find(|c| c.side == agent.side) {
            return Err(IcrError::parse(no, format!("{agent} cannot rank {c} from its own side")));
        }
        rows.push((no, agent, list));
    }
    let mentioned = |side: Side| {
        rows.iter()
            .flat_map(|(_, a, l)| std::iter::once(a).chain(l.iter()))
            .filter(|a| a.side == side)
            .map(|a| a.index + 1)
            .max()
            .unwrap_or(0)
    };
    let n_men = header.men.unwrap_or_else(|| mentioned(Side::Man));
    let n_women = header.women.unwrap_or_else(|| mentioned(Side::Woman));
    let mut men = vec![None; n_men];
    let mut women = vec![None; n_women];
    for (no, agent, list) in rows {
        let slot = match agent.side {
            Side::Man => men.get_mut(agent.index),
            Side::Woman => women.get_mut(agent.index),
        }
        .ok_or_else(|| IcrError::parse(no, format!("{agent} is outside the declared market")))?;
        if slot.is_some() {
            return Err(IcrError::parse(no, format!("{agent} listed twice")));
        }
        *slot = Some(list.into_iter().map(|c| c.index).collect::<Vec<_>>());
    }
    StrictProfile::new(
        men.into_iter().map(Option::unwrap_or_default).collect(),
        women.into_iter().map(Option::unwrap_or_default).collect(),
    )
}

pub fn write_profile(truth: &StrictProfile) -> String {
    let mut out = String::new();
    writeln!(out, "men: {}", truth.n_men()).unwrap();
    writeln!(out, "women: {}", truth.n_women()).unwrap();
    let agents = (0..truth.n_men())
        .map(AgentRef::man)
        .chain((0..truth.n_women()).map(AgentRef::woman));
    for agent in agents {
        let list = names(agent.side.other(), truth.list(agent).iter().copied());
        if list.is_empty() {
            writeln!(out, "{agent}:").unwrap();
        } else {
            writeln!(out, "{agent}: {list}").unwrap();
        }
    }
    out
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    content_lines(text)
        .map(|(no, line)| {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = tokens[..] else {
                return Err(IcrError::parse(no, "expected `m<i> w<j>`"));
            };
            let (a, b) = (parse_agent(a, no)?, parse_agent(b, no)?);
            match (a.side, b.side) {
                (Side::Man, Side::Woman) => Ok((a.index, b.index)),
                (Side::Woman, Side::Man) => Ok((b.index, a.index)),
                _ => Err(IcrError::parse(no, "a pair needs one man and one woman")),
            }
        })
        .collect()
}

pub fn parse_matching(text: &str, n_men: usize, n_women: usize) -> Result<Matching> {
    Matching::from_pairs(n_men, n_women, parse_pairs(text)?)
}

pub fn write_matching(matching: &Matching) -> String {
    write_pair_lines(matching.pairs())
}

pub fn parse_interviews(text: &str) -> Result<InterviewSet> {
    Ok(parse_pairs(text)?.into_iter().collect())
}

pub fn write_interviews(interviews: &InterviewSet) -> String {
    write_pair_lines(interviews.iter())
}

fn write_pair_lines(pairs: impl Iterator<Item = (usize, usize)>) -> String {
    let mut out = String::new();
    for (m, w) in pairs {
        writeln!(out, "{} {}", AgentRef::man(m), AgentRef::woman(w)).unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<SimpleGraph> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or_else(|| IcrError::parse(1, "empty graph file"))?;
    let head: Vec<&str> = first.split_whitespace().collect();
    let (n, m) = match head[..] {
        ["graph", n, m] => (parse_count(n, no)?, parse_count(m, no)?),
        _ => return Err(IcrError::parse(no, "expected `graph <n> <m>`")),
    };
    let mut edges = Vec::with_capacity(m);
    for (no, line) in lines {
        let ends = line
            .split_whitespace()
            .map(|t| parse_count(t, no))
            .collect::<Result<Vec<_>>>()?;
        let [u, v] = ends[..] else {
            return Err(IcrError::parse(no, "expected `u v`"));
        };
        if u == 0 || v == 0 || u > n || v > n {
            return Err(IcrError::parse(no, format!("vertices are numbered 1..={n}")));
        }
        edges.push((u - 1, v - 1));
    }
    if edges.len() != m {
        return Err(IcrError::parse(no, format!("header announces {m} edges, found {}", edges.len())));
    }
    SimpleGraph::new(n, edges).map_err(|e| IcrError::parse(no, e.to_string()))
}

pub fn write_graph(graph: &SimpleGraph) -> String {
    let mut out = format!("graph {} {}\n", graph.vertex_count(), graph.edge_count());
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}
