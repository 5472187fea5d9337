//! Certificates that a module lies in a ball `[C]_r`: trees of leaves,
//! projectives, sums, summands, syzygies and extensions, with a verifier
//! that recomputes every node from raw data.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cert::{
    first_difference, Decoded, Decoder, Failure, MatrixDoc, ModuleDoc, RingDoc, SesDoc, VerifyReport, FORMAT_VERSION,
};
use crate::error::{Error, Result};
use crate::fpmod::{direct_sum, syzygy, Dimension, FPModule, ModuleMap, ShortExactSequence};
use crate::poly::Poly;
use crate::reconstruct::{
    extension_tower, reconstruct, reconstruct_with_power, PowerSearch, ReconstructionCertificate,
};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorClass {
    Explicit(Vec<FPModule>),
    FiniteLength,
}

impl GeneratorClass {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorClass::Explicit(_) => "EXPLICIT",
            GeneratorClass::FiniteLength => "FINITE_LENGTH",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Node {
    Leaf { module: FPModule },
    Proj { module: FPModule },
    Sum { children: Vec<Node> },
    Summand { child: Box<Node>, module: FPModule, section: ModuleMap, retraction: ModuleMap },
    Syz { child: Box<Node>, steps: usize, module: FPModule },
    Ext { left: Box<Node>, right: Box<Node>, ses: ShortExactSequence },
}

impl Node {
    pub fn kind(&self) -> &'static str {
        match self {
            Node::Leaf { .. } => "LEAF",
            Node::Proj { .. } => "PROJ",
            Node::Sum { .. } => "SUM",
            Node::Summand { .. } => "SUMMAND",
            Node::Syz { .. } => "SYZ",
            Node::Ext { .. } => "EXT",
        }
    }

    /// The stored object of this node (a sum is computed from its children).
    pub fn object(&self, ring: &Arc<Ring>) -> FPModule {
        match self {
            Node::Leaf { module } | Node::Proj { module } => module.clone(),
            Node::Sum { children } => {
                let objs: Vec<FPModule> = children.iter().map(|c| c.object(ring)).collect();
                let refs: Vec<&FPModule> = objs.iter().collect();
                direct_sum(ring, &refs).module
            }
            Node::Summand { module, .. } | Node::Syz { module, .. } => module.clone(),
            Node::Ext { ses, .. } => ses.mid().clone(),
        }
    }

    fn children(&self) -> Vec<&Node> {
        match self {
            Node::Leaf { .. } | Node::Proj { .. } => Vec::new(),
            Node::Sum { children } => children.iter().collect(),
            Node::Summand { child, .. } | Node::Syz { child, .. } => vec![child],
            Node::Ext { left, right, .. } => vec![left, right],
        }
    }

    /// Number of nodes of the given kind in this subtree.
    pub fn count(&self, kind: &str) -> usize {
        (self.kind() == kind) as usize + self.children().iter().map(|c| c.count(kind)).sum::<usize>()
    }

    /// Radius from the arithmetic alone, without checks.
    pub fn radius(&self) -> u32 {
        match self {
            Node::Leaf { .. } | Node::Proj { .. } => 1,
            Node::Sum { children } => children.iter().map(Node::radius).max().unwrap_or(1),
            Node::Summand { child, .. } | Node::Syz { child, .. } => child.radius(),
            Node::Ext { left, right, .. } => left.radius() + right.radius(),
        }
    }
}

/// Inputs of a reconstruction, kept so the verifier can replay it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub module: FPModule,
    pub xs: Vec<Poly>,
    pub k: u32,
    pub per_variable: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct BallCertificate {
    pub ring: Arc<Ring>,
    pub generator_class: GeneratorClass,
    pub root_object: FPModule,
    pub radius: u32,
    pub tree: Node,
    pub origin: Option<Origin>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallReport {
    pub valid: bool,
    pub radius: u32,
    pub failures: Vec<Failure>,
}

fn check_node(
    node: &Node,
    ring: &Arc<Ring>,
    class: &GeneratorClass,
    path: &str,
    failures: &mut Vec<Failure>,
) -> (FPModule, u32) {
    let mut fail = |code: &str, detail: String| failures.push(Failure::new(path, code, detail));
    match node {
        Node::Leaf { module } => {
            match class {
                GeneratorClass::Explicit(list) => {
                    if !list.contains(module) {
                        fail("GENERATOR_CLASS", "leaf is not one of the listed generators".into());
                    }
                }
                GeneratorClass::FiniteLength => {
                    if !module.dimension().is_finite() {
                        fail("GENERATOR_CLASS", "leaf has infinite dimension".into());
                    }
                }
            }
            (module.clone(), 1)
        }
        Node::Proj { module } => {
            if !module.is_free() {
                fail("NOT_FREE", "projective node holds a non-free module".into());
            }
            (module.clone(), 1)
        }
        Node::Sum { children } => {
            let mut objs = Vec::with_capacity(children.len());
            let mut radius = 1;
            for (i, c) in children.iter().enumerate() {
                let (o, r) = check_node(c, ring, class, &format!("{path}.children[{i}]"), failures);
                objs.push(o);
                radius = radius.max(r);
            }
            let refs: Vec<&FPModule> = objs.iter().collect();
            (direct_sum(ring, &refs).module, radius)
        }
        Node::Summand { child, module, section, retraction } => {
            let (obj, r) = check_node(child, ring, class, &format!("{path}.child"), failures);
            let shaped = section.source() == module
                && section.target() == &obj
                && retraction.source() == &obj
                && retraction.target() == module;
            if !shaped {
                failures.push(Failure::new(path, "STRUCTURE", "section/retraction do not connect module and child"));
            } else if !retraction.compose(section).is_ok_and(|c| c.is_identity()) {
                failures.push(Failure::new(path, "IDENTITY", "retraction ∘ section is not the identity"));
            }
            (module.clone(), r)
        }
        Node::Syz { child, steps, module } => {
            let (obj, r) = check_node(child, ring, class, &format!("{path}.child"), failures);
            if *steps == 0 {
                failures.push(Failure::new(path, "SYZYGY", "syzygy node needs at least one step"));
            } else if syzygy(&obj, *steps) != *module {
                failures.push(Failure::new(path, "SYZYGY", "module is not the session syzygy of the child"));
            }
            (module.clone(), r)
        }
        Node::Ext { left, right, ses } => {
            let (lo, lr) = check_node(left, ring, class, &format!("{path}.left"), failures);
            let (ro, rr) = check_node(right, ring, class, &format!("{path}.right"), failures);
            if ses.left() != &lo || ses.right() != &ro {
                failures.push(Failure::new(path, "STRUCTURE", "sequence ends do not match the children"));
            } else {
                let c = ses.check();
                if !c.holds() {
                    failures.push(Failure::new(
                        path,
                        "EXACTNESS",
                        format!("injective={} surjective={} exact_middle={}", c.injective, c.surjective, c.exact_middle),
                    ));
                }
            }
            (ses.mid().clone(), lr + rr)
        }
    }
}

/// Recomputes every node check; stored flags are never trusted.
pub fn verify_ball(cert: &BallCertificate) -> BallReport {
    let mut failures = Vec::new();
    let (obj, radius) = check_node(&cert.tree, &cert.ring, &cert.generator_class, "$.tree", &mut failures);
    if obj != cert.root_object {
        failures.push(Failure::new("$.root_object", "ROOT", "tree does not build the root object"));
    }
    if radius != cert.radius {
        failures.push(Failure::new("$.radius", "RADIUS", format!("computed radius is {radius}")));
    }
    BallReport { valid: failures.is_empty(), radius, failures }
}

fn leaf(module: &FPModule) -> Node {
    if module.is_free() {
        Node::Proj { module: module.clone() }
    } else {
        Node::Leaf { module: module.clone() }
    }
}

fn build_ball(cert: &ReconstructionCertificate, finite_length: bool) -> Result<BallCertificate> {
    let ring = cert.ring().clone();
    let tower = extension_tower(cert)?;
    let mut node = leaf(&tower.homology[0]);
    for (i, ses) in tower.sequences.iter().enumerate() {
        let prev = &tower.stages[i];
        let syz = Node::Syz { child: Box::new(node), steps: 1, module: ses.right().clone() };
        debug_assert_eq!(&syzygy(prev, 1), ses.right());
        node = Node::Ext { left: Box::new(leaf(&tower.homology[i + 1])), right: Box::new(syz), ses: ses.clone() };
    }
    let tree = Node::Summand {
        child: Box::new(node),
        module: cert.module.clone(),
        section: tower.section.clone(),
        retraction: tower.retraction.clone(),
    };
    let generator_class = if finite_length {
        GeneratorClass::FiniteLength
    } else {
        GeneratorClass::Explicit(tower.homology.clone())
    };
    Ok(BallCertificate {
        ring,
        generator_class,
        root_object: cert.module.clone(),
        radius: tree.radius(),
        tree,
        origin: Some(Origin {
            module: cert.module.clone(),
            xs: cert.xs.clone(),
            k: cert.k,
            per_variable: cert.per_variable.clone(),
        }),
    })
}

/// `M ∈ [H_0, ..., H_n]_{n+1}` from the extension tower.
pub fn ball_from_reconstruction(cert: &ReconstructionCertificate) -> Result<BallCertificate> {
    build_ball(cert, false)
}

#[derive(Debug, Clone)]
pub struct FiniteLengthBall {
    pub certificate: BallCertificate,
    /// Whether `R / (sop)` has finite dimension, i.e. the elements really
    /// form a system of parameters of the graded proxy.
    pub sop_finite_colength: bool,
}

/// A ball certificate over the finite-length modules.
pub fn finite_length_ball(m: &FPModule, sop: &[Poly], k_max: u32) -> Result<FiniteLengthBall> {
    let ring = m.ring();
    let sop_finite_colength = FPModule::cyclic(ring.clone(), sop).dimension().is_finite();
    let cert = reconstruct(m, sop, k_max)?;
    let ball = build_ball(&cert, true)?;
    for (i, h) in extension_tower(&cert)?.homology.iter().enumerate() {
        if !h.is_free() && h.dimension() == Dimension::Infinite {
            return Err(Error::NotFiniteLengthLeaf { index: i });
        }
    }
    Ok(FiniteLengthBall { certificate: ball, sop_finite_colength })
}

/// Joins two certificates by an extension `0 -> A -> B -> C -> 0`; the
/// radius is the sum.
pub fn graft(left: &BallCertificate, right: &BallCertificate, ses: &ShortExactSequence) -> BallCertificate {
    let tree = Node::Ext { left: Box::new(left.tree.clone()), right: Box::new(right.tree.clone()), ses: ses.clone() };
    BallCertificate {
        ring: left.ring.clone(),
        generator_class: left.generator_class.clone(),
        root_object: ses.mid().clone(),
        radius: tree.radius(),
        tree,
        origin: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
pub enum GeneratorClassDoc {
    Explicit { modules: Vec<ModuleDoc> },
    FiniteLength,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
pub enum NodeDoc {
    Leaf { module: ModuleDoc },
    Proj { module: ModuleDoc },
    Sum { children: Vec<NodeDoc> },
    Summand { module: ModuleDoc, section: MatrixDoc, retraction: MatrixDoc, child: Box<NodeDoc> },
    Syz { steps: usize, module: ModuleDoc, child: Box<NodeDoc> },
    Ext { ses: SesDoc, left: Box<NodeDoc>, right: Box<NodeDoc> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OriginDoc {
    pub module: ModuleDoc,
    pub xs: Vec<String>,
    pub k: u32,
    pub per_variable: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallDoc {
    pub kind: String,
    pub version: u32,
    pub ring: RingDoc,
    pub generator_class: GeneratorClassDoc,
    pub root_object: ModuleDoc,
    pub radius: u32,
    pub origin: Option<OriginDoc>,
    pub tree: NodeDoc,
}

fn encode_node(ring: &Ring, node: &Node) -> NodeDoc {
    match node {
        Node::Leaf { module } => NodeDoc::Leaf { module: ModuleDoc::encode(module) },
        Node::Proj { module } => NodeDoc::Proj { module: ModuleDoc::encode(module) },
        Node::Sum { children } => NodeDoc::Sum { children: children.iter().map(|c| encode_node(ring, c)).collect() },
        Node::Summand { child, module, section, retraction } => NodeDoc::Summand {
            module: ModuleDoc::encode(module),
            section: MatrixDoc::encode(ring, section.matrix()),
            retraction: MatrixDoc::encode(ring, retraction.matrix()),
            child: Box::new(encode_node(ring, child)),
        },
        Node::Syz { child, steps, module } => {
            NodeDoc::Syz { steps: *steps, module: ModuleDoc::encode(module), child: Box::new(encode_node(ring, child)) }
        }
        Node::Ext { left, right, ses } => NodeDoc::Ext {
            ses: SesDoc::encode(ses),
            left: Box::new(encode_node(ring, left)),
            right: Box::new(encode_node(ring, right)),
        },
    }
}

pub fn encode_ball(cert: &BallCertificate) -> BallDoc {
    let ring = &cert.ring;
    BallDoc {
        kind: "ball".into(),
        version: FORMAT_VERSION,
        ring: RingDoc::encode(ring),
        generator_class: match &cert.generator_class {
            GeneratorClass::Explicit(ms) => GeneratorClassDoc::Explicit { modules: ms.iter().map(ModuleDoc::encode).collect() },
            GeneratorClass::FiniteLength => GeneratorClassDoc::FiniteLength,
        },
        root_object: ModuleDoc::encode(&cert.root_object),
        radius: cert.radius,
        origin: cert.origin.as_ref().map(|o| OriginDoc {
            module: ModuleDoc::encode(&o.module),
            xs: o.xs.iter().map(|x| x.to_canonical(ring)).collect(),
            k: o.k,
            per_variable: o.per_variable.clone(),
        }),
        tree: encode_node(ring, &cert.tree),
    }
}

fn decode_node(dec: &Decoder, doc: &NodeDoc, path: &str) -> Decoded<Node> {
    Ok(match doc {
        NodeDoc::Leaf { module } => Node::Leaf { module: dec.module(module, &format!("{path}.module"))? },
        NodeDoc::Proj { module } => Node::Proj { module: dec.module(module, &format!("{path}.module"))? },
        NodeDoc::Sum { children } => Node::Sum {
            children: children
                .iter()
                .enumerate()
                .map(|(i, c)| decode_node(dec, c, &format!("{path}.children[{i}]")))
                .collect::<Decoded<Vec<_>>>()?,
        },
        NodeDoc::Summand { module, section, retraction, child } => {
            let child = decode_node(dec, child, &format!("{path}.child"))?;
            let obj = child.object(&dec.ring);
            let module = dec.module(module, &format!("{path}.module"))?;
            let section = dec.map(&module, &obj, section, &format!("{path}.section"))?;
            let retraction = dec.map(&obj, &module, retraction, &format!("{path}.retraction"))?;
            Node::Summand { child: Box::new(child), module, section, retraction }
        }
        NodeDoc::Syz { steps, module, child } => Node::Syz {
            child: Box::new(decode_node(dec, child, &format!("{path}.child"))?),
            steps: *steps,
            module: dec.module(module, &format!("{path}.module"))?,
        },
        NodeDoc::Ext { ses, left, right } => Node::Ext {
            ses: dec.ses(ses, &format!("{path}.ses"))?,
            left: Box::new(decode_node(dec, left, &format!("{path}.left"))?),
            right: Box::new(decode_node(dec, right, &format!("{path}.right"))?),
        },
    })
}

pub fn decode_ball(doc: &BallDoc) -> Decoded<BallCertificate> {
    if doc.kind != "ball" || doc.version != FORMAT_VERSION {
        return Err(Failure::new("$", "PARSE", "not a version 1 ball certificate"));
    }
    let dec = Decoder::new(&doc.ring, "$.ring")?;
    let generator_class = match &doc.generator_class {
        GeneratorClassDoc::Explicit { modules } => GeneratorClass::Explicit(
            modules
                .iter()
                .enumerate()
                .map(|(i, m)| dec.module(m, &format!("$.generator_class.modules[{i}]")))
                .collect::<Decoded<Vec<_>>>()?,
        ),
        GeneratorClassDoc::FiniteLength => GeneratorClass::FiniteLength,
    };
    let origin = match &doc.origin {
        None => None,
        Some(o) => Some(Origin {
            module: dec.module(&o.module, "$.origin.module")?,
            xs: dec.polys(&o.xs, "$.origin.xs")?,
            k: o.k,
            per_variable: o.per_variable.clone(),
        }),
    };
    Ok(BallCertificate {
        ring: dec.ring.clone(),
        generator_class,
        root_object: dec.module(&doc.root_object, "$.root_object")?,
        radius: doc.radius,
        tree: decode_node(&dec, &doc.tree, "$.tree")?,
        origin,
    })
}

/// Structural verification plus, for certificates produced from a
/// reconstruction, a replay of the construction compared value by value.
pub fn verify_ball_document(value: &Value) -> VerifyReport {
    let doc: BallDoc = match serde_json::from_value(value.clone()) {
        Ok(d) => d,
        Err(e) => return VerifyReport::from_failures("ball", None, vec![Failure::new("$", "PARSE", e.to_string())]),
    };
    let cert = match decode_ball(&doc) {
        Ok(c) => c,
        Err(f) => return VerifyReport::from_failures("ball", None, vec![f]),
    };
    let report = verify_ball(&cert);
    let mut failures = report.failures;
    if let Some(o) = &cert.origin {
        let finite = cert.generator_class == GeneratorClass::FiniteLength;
        let search = PowerSearch { k: o.k, per_variable: o.per_variable.clone() };
        let replay = reconstruct_with_power(&o.module, &o.xs, search).and_then(|c| build_ball(&c, finite));
        match replay {
            Ok(b) => {
                let replayed = serde_json::to_value(encode_ball(&b)).expect("documents serialize");
                if let Some(p) = first_difference(value, &replayed, "$") {
                    failures.push(Failure::new(&p, "REPLAY", "differs from the recomputed certificate"));
                }
            }
            Err(e) => failures.push(Failure::new("$.origin", "REPLAY", e.to_string())),
        }
        if o.module != cert.root_object {
            failures.push(Failure::new("$.origin.module", "ROOT", "origin module differs from the root object"));
        }
    }
    VerifyReport::from_failures("ball", Some(report.radius), failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::ModuleMap;
    use crate::matrix::Matrix;
    use crate::monomial::MonomialOrder;

    fn truncated() -> Arc<Ring> {
        Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap()
    }

    #[test]
    fn single_leaf() {
        let a = truncated();
        let m = FPModule::cyclic(a.clone(), &[a.var(0)]);
        let cert = BallCertificate {
            ring: a.clone(),
            generator_class: GeneratorClass::FiniteLength,
            root_object: m.clone(),
            radius: 1,
            tree: Node::Leaf { module: m },
            origin: None,
        };
        let rep = verify_ball(&cert);
        assert!(rep.valid, "{:?}", rep.failures);
        assert_eq!(rep.radius, 1);
    }

    #[test]
    fn base_case_ball_has_radius_two() {
        let a = truncated();
        let m = FPModule::cyclic(a.clone(), &[a.var(0)]);
        let rc = reconstruct(&m, &[a.var(0)], 16).unwrap();
        let ball = ball_from_reconstruction(&rc).unwrap();
        let rep = verify_ball(&ball);
        assert!(rep.valid, "{:?}", rep.failures);
        assert_eq!(rep.radius, 2);
        assert_eq!(ball.tree.count("EXT"), 1);
        assert_eq!(ball.tree.count("SYZ"), 1);
        assert_eq!(ball.tree.count("SUMMAND"), 1);
        let text = serde_json::to_string(&encode_ball(&ball)).unwrap();
        let report = crate::cert::verify_document(&text);
        assert!(report.valid, "{:?}", report.failures);
    }

    #[test]
    fn non_surjective_extension_is_rejected() {
        let a = truncated();
        let free = FPModule::free(a.clone(), 1);
        let m = FPModule::cyclic(a.clone(), &[a.var(0)]);
        let ideal = FPModule::cyclic(a.clone(), &[Poly::parse(&a, "x^2").unwrap()]);
        let inj = ModuleMap::new(&ideal, &free, Matrix::scalar(&a, 1, &a.var(0))).unwrap();
        let surj = ModuleMap::zero(&free, &m);
        let ses = ShortExactSequence::new(inj, surj).unwrap();
        let cert = BallCertificate {
            ring: a.clone(),
            generator_class: GeneratorClass::FiniteLength,
            root_object: free.clone(),
            radius: 2,
            tree: Node::Ext {
                left: Box::new(Node::Leaf { module: ideal }),
                right: Box::new(Node::Leaf { module: m }),
                ses,
            },
            origin: None,
        };
        let rep = verify_ball(&cert);
        assert!(!rep.valid);
        assert_eq!(rep.failures[0].code, "EXACTNESS");
    }
}
