//! JSON instance files and DIMACS edge lists.
//!
//! An instance file is one JSON object tagged by `kind`:
//!
//! ```json
//! { "kind": "udg_is", "dimension": 2, "resolution": 4,
//!   "points": [[0, 0], [4, 0]], "conflict_threshold": 16, "target_size": 1 }
//! ```
//!
//! `weighted_edge` files carry `vertex_count`, `selection_size` and `weights`
//! as the row-major upper triangle of `"p/q"` strings (a full symmetric matrix
//! is also accepted on input). `cluster_min` files carry points,
//! `selection_size` and `potential: {breakpoints, values}`; `clique` files
//! carry `vertex_count`, `edges` and `target_size`.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::generate::GeneratorHeader;
use crate::error::{Error, Result};
use crate::model::{
    CliqueInstance, ClusterMinInstance, Graph, Instance, PointSet, ProblemKind, RadialPotential, Solution, UdgInstance,
    WeightedEdgeInstance,
};
use crate::rational::Rational;
use crate::reductions::{DecisionAnswer, ReductionReceipt};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WeightsField {
    Triangle(Vec<Rational>),
    Matrix(Vec<Vec<Rational>>),
}

#[derive(Serialize, Deserialize)]
struct PotentialField {
    breakpoints: Vec<u128>,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    kind: ProblemKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator: Option<GeneratorHeader>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    resolution: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    points: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<WeightsField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conflict_threshold: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    potential: Option<PotentialField>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    selection_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target_size: Option<usize>,
}

impl InstanceFile {
    fn blank(kind: ProblemKind) -> Self {
        InstanceFile {
            kind,
            generator: None,
            dimension: None,
            resolution: None,
            points: None,
            vertex_count: None,
            edges: None,
            weights: None,
            conflict_threshold: None,
            potential: None,
            selection_size: None,
            target_size: None,
        }
    }

    fn with_points(mut self, points: &PointSet) -> Self {
        self.dimension = Some(points.dimension());
        self.resolution = Some(points.resolution());
        self.points = Some(points.iter().map(<[i64]>::to_vec).collect());
        self
    }
}

fn to_file(instance: &Instance) -> InstanceFile {
    let mut f = InstanceFile::blank(instance.kind());
    match instance {
        Instance::Clique(c) => {
            f.vertex_count = Some(c.graph().vertex_count());
            f.edges = Some(c.graph().edges().map(|(i, j)| [i, j]).collect());
            f.target_size = Some(c.clique_size());
        }
        Instance::WeightedEdge(w) => {
            f.vertex_count = Some(w.vertex_count());
            f.weights = Some(WeightsField::Triangle(w.upper_triangle().to_vec()));
            f.selection_size = Some(w.selection_size());
        }
        Instance::UdgIs(u) => {
            f = f.with_points(u.centers());
            f.conflict_threshold = Some(u.conflict_threshold());
            f.target_size = Some(u.target_size());
        }
        Instance::ClusterMin(c) => {
            f = f.with_points(c.sites());
            f.potential = Some(PotentialField {
                breakpoints: c.potential().breakpoints().to_vec(),
                values: c.potential().values().to_vec(),
            });
            f.selection_size = Some(c.particle_count());
        }
    }
    f
}

/// 1-based line of the first occurrence of `"field"` in `text`, or 1.
fn line_of(text: &str, field: &str) -> usize {
    let needle = format!("\"{field}\"");
    text.lines().position(|l| l.contains(&needle)).map_or(1, |p| p + 1)
}

struct Ctx<'a> {
    text: &'a str,
}

impl Ctx<'_> {
    fn err(&self, field: &str, message: impl Into<String>) -> Error {
        Error::parse(line_of(self.text, field), field, message)
    }

    fn need<T>(&self, value: Option<T>, field: &str) -> Result<T> {
        value.ok_or_else(|| self.err(field, "missing field"))
    }

    /// Re-tags a model validation error with the field it came from.
    fn check<T>(&self, value: Result<T>, field: &str) -> Result<T> {
        value.map_err(|e| match e {
            Error::Input(msg) => self.err(field, msg),
            other => other,
        })
    }

    fn points(&self, f: &mut InstanceFile) -> Result<PointSet> {
        let dim = self.need(f.dimension, "dimension")?;
        let res = self.need(f.resolution, "resolution")?;
        let pts = self.need(f.points.take(), "points")?;
        self.check(PointSet::new(dim, res, &pts), "points")
    }

    fn weights(&self, field: WeightsField, n: usize) -> Result<Vec<Rational>> {
        match field {
            WeightsField::Triangle(t) => Ok(t),
            WeightsField::Matrix(m) => {
                if m.len() != n || m.iter().any(|row| row.len() != n) {
                    return Err(self.err("weights", format!("weight matrix must be {n}x{n}")));
                }
                let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
                for i in 0..n {
                    for j in i + 1..n {
                        if m[i][j] != m[j][i] {
                            return Err(self.err(
                                "weights",
                                format!(
                                    "asymmetric weight: w({i},{j}) = {} but w({j},{i}) = {}",
                                    m[i][j], m[j][i]
                                ),
                            ));
                        }
                        upper.push(m[i][j]);
                    }
                }
                Ok(upper)
            }
        }
    }
}

fn from_file(mut f: InstanceFile, text: &str) -> Result<Instance> {
    let cx = Ctx { text };
    Ok(match f.kind {
        ProblemKind::Clique => {
            let n = cx.need(f.vertex_count, "vertex_count")?;
            let edges = cx.need(f.edges.take(), "edges")?;
            let graph = cx.check(Graph::new(n, edges.into_iter().map(|[i, j]| (i, j))), "edges")?;
            let k = cx.need(f.target_size, "target_size")?;
            Instance::Clique(cx.check(CliqueInstance::new(graph, k), "target_size")?)
        }
        ProblemKind::WeightedEdge => {
            let n = cx.need(f.vertex_count, "vertex_count")?;
            let weights = cx.weights(cx.need(f.weights.take(), "weights")?, n)?;
            let k = cx.need(f.selection_size, "selection_size")?;
            let inst = WeightedEdgeInstance::new(n, weights, k);
            Instance::WeightedEdge(cx.check(inst, "weights")?)
        }
        ProblemKind::UdgIs => {
            let centers = cx.points(&mut f)?;
            let threshold = cx.need(f.conflict_threshold, "conflict_threshold")?;
            let k = cx.need(f.target_size, "target_size")?;
            Instance::UdgIs(cx.check(UdgInstance::new(centers, threshold, k), "target_size")?)
        }
        ProblemKind::ClusterMin => {
            let sites = cx.points(&mut f)?;
            let p = cx.need(f.potential.take(), "potential")?;
            let potential = cx.check(RadialPotential::new(p.breakpoints, p.values), "potential")?;
            let k = cx.need(f.selection_size, "selection_size")?;
            Instance::ClusterMin(cx.check(ClusterMinInstance::new(sites, k, potential), "selection_size")?)
        }
    })
}

fn json_error(e: serde_json::Error) -> Error {
    let msg = e.to_string();
    let field = msg
        .split('`')
        .nth(1)
        .filter(|_| msg.contains("field"))
        .unwrap_or("<document>")
        .to_string();
    Error::parse(e.line().max(1), field, msg)
}

pub fn instance_to_json(instance: &Instance, header: Option<&GeneratorHeader>) -> String {
    let mut file = to_file(instance);
    file.generator = header.cloned();
    serde_json::to_string_pretty(&file).expect("instance files always serialize")
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    Ok(instance_document_from_json(text)?.0)
}

/// Parses an instance together with its generator header, if any.
pub fn instance_document_from_json(text: &str) -> Result<(Instance, Option<GeneratorHeader>)> {
    let mut file: InstanceFile = serde_json::from_str(text).map_err(json_error)?;
    let header = file.generator.take();
    Ok((from_file(file, text)?, header))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    instance_from_json(&read_text(path.as_ref())?)
}

pub fn write_instance(instance: &Instance, path: impl AsRef<Path>) -> Result<()> {
    write_instance_with_header(instance, None, path)
}

pub fn write_instance_with_header(
    instance: &Instance,
    header: Option<&GeneratorHeader>,
    path: impl AsRef<Path>,
) -> Result<()> {
    let mut text = instance_to_json(instance, header);
    text.push('\n');
    write_text(path.as_ref(), &text)
}

/// What `solve` writes: the solution, the kind of instance it answers and,
/// for decision kinds, the answer and any reduction receipt used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionDocument {
    pub kind: ProblemKind,
    pub solution: Solution,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub answer: Option<DecisionAnswer>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub receipt: Option<ReductionReceipt>,
}

/// Reads any serde type (solutions, receipts, reports) from a JSON file.
pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    serde_json::from_str(&read_text(path.as_ref())?).map_err(json_error)
}

pub fn write_json<T: Serialize>(value: &T, path: impl AsRef<Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(json_error)?;
    text.push('\n');
    write_text(path.as_ref(), &text)
}

/// Parses a DIMACS edge list: `c` comments, one `p edge n m` header and
/// 1-indexed `e i j` lines. Repeated edges collapse; self-loops are rejected.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") => continue,
            Some("p") => {
                if graph.is_some() {
                    return Err(Error::parse(line_no, "p", "duplicate problem line"));
                }
                let fmt = tok.next().unwrap_or_default();
                if fmt != "edge" && fmt != "col" {
                    return Err(Error::parse(line_no, "p", format!("unsupported format `{fmt}`")));
                }
                let n = parse_count(tok.next(), line_no, "n")?;
                parse_count(tok.next(), line_no, "m")?;
                graph = Some(Graph::empty(n));
            }
            Some("e") => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "e", "edge before `p edge` header"))?;
                let i = parse_count(tok.next(), line_no, "i")?;
                let j = parse_count(tok.next(), line_no, "j")?;
                if i == 0 || j == 0 {
                    return Err(Error::parse(line_no, "e", "vertex ids are 1-indexed"));
                }
                g.insert_edge(i - 1, j - 1)
                    .map_err(|e| Error::parse(line_no, "e", e.to_string()))?;
            }
            Some(other) => {
                return Err(Error::parse(line_no, other, "unknown line type"));
            }
        }
    }
    graph.ok_or_else(|| Error::parse(1, "p", "missing `p edge` header"))
}

fn parse_count(tok: Option<&str>, line: usize, field: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::parse(line, field, "missing value"))?;
    tok.parse()
        .map_err(|_| Error::parse(line, field, format!("`{tok}` is not a non-negative integer")))
}

pub fn to_dimacs(graph: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", graph.vertex_count(), graph.edge_count());
    for (i, j) in graph.edges() {
        out.push_str(&format!("e {} {}\n", i + 1, j + 1));
    }
    out
}

pub fn read_dimacs(path: impl AsRef<Path>) -> Result<Graph> {
    parse_dimacs(&read_text(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymmetric_matrix_rejected() {
        let text = r#"{
  "kind": "weighted_edge",
  "vertex_count": 3,
  "selection_size": 2,
  "weights": [["0", "1", "2"], ["1", "0", "3"], ["2", "4", "0"]]
}"#;
        let err = instance_from_json(text).unwrap_err();
        let Error::Parse { line, field, message } = err else {
            panic!("expected parse error, got {err:?}")
        };
        assert_eq!(field, "weights");
        assert_eq!(line, 5);
        assert!(message.contains("asymmetric weight"), "{message}");
    }

    #[test]
    fn symmetric_matrix_accepted() {
        let text = r#"{"kind": "weighted_edge", "vertex_count": 3, "selection_size": 2,
            "weights": [["0", "1", "2"], ["1", "0", "1/3"], ["2", "1/3", "0"]]}"#;
        let Instance::WeightedEdge(w) = instance_from_json(text).unwrap() else {
            panic!()
        };
        assert_eq!(w.weight(2, 1), "1/3".parse().unwrap());
    }

    #[test]
    fn missing_field_names_it() {
        let text = "{\n\"kind\": \"udg_is\",\n\"dimension\": 2,\n\"resolution\": 1,\n\"points\": [[0,0],[2,0]],\n\"target_size\": 1\n}";
        match instance_from_json(text).unwrap_err() {
            Error::Parse { field, .. } => assert_eq!(field, "conflict_threshold"),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn syntax_error_has_line() {
        match instance_from_json("{\n\"kind\": \"clique\",\n oops }").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn dimacs_roundtrip_and_errors() {
        let g = parse_dimacs("c tiny\np edge 4 3\ne 1 2\ne 2 3\ne 4 1\ne 2 1\n").unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 3));
        assert_eq!(parse_dimacs(&to_dimacs(&g)).unwrap(), g);

        match parse_dimacs("p edge 3 1\ne 2 2\n").unwrap_err() {
            Error::Parse { line, message, .. } => {
                assert_eq!(line, 2);
                assert!(message.contains("self-loop"));
            }
            e => panic!("{e:?}"),
        }
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 0 1\n").is_err());
    }
}
