use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    first_difference, ComplexDoc, Decoded, Decoder, DimDoc, Failure, MatrixDoc, ModuleDoc, RingDoc, SesDoc,
    VerifyReport, FORMAT_VERSION,
};
use crate::complexes::{compare_homology, koszul, tensor_koszul_one, Complex, ComplexMap, Verdict};
use crate::fpmod::{direct_sum, FPModule, ModuleMap, Resolution};
use crate::reconstruct::{
    find_power, reconstruct_with_power, PowerSearch, ReconstructionCertificate, StepRecord, STAIRCASE_BOUND,
};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopDoc {
    pub slots: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub iso: MatrixDoc,
    pub inverse: MatrixDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepDoc {
    pub index: usize,
    pub x: String,
    pub z: ComplexDoc,
    pub tau: SesDoc,
    pub pullback: SesDoc,
    pub section: MatrixDoc,
    pub retraction: MatrixDoc,
    pub h: MatrixDoc,
    pub top_map: MatrixDoc,
    pub result: ComplexDoc,
    /// Components of the chain map `result -> z` in degrees `0..=index`.
    pub chain_map: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyDegreeDoc {
    pub degree: i32,
    pub complex: DimDoc,
    pub koszul: DimDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomologyDoc {
    pub verdict: Verdict,
    pub degrees: Vec<HomologyDegreeDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReconstructionDoc {
    pub kind: String,
    pub version: u32,
    pub ring: RingDoc,
    pub module: ModuleDoc,
    pub xs: Vec<String>,
    pub k: u32,
    pub per_variable: Vec<u32>,
    pub powers: Vec<String>,
    pub complex: ComplexDoc,
    pub top: TopDoc,
    pub section: MatrixDoc,
    pub retraction: MatrixDoc,
    pub steps: Vec<StepDoc>,
    pub koszul: ComplexDoc,
    pub chain_map: Vec<MatrixDoc>,
    pub homology: HomologyDoc,
}

fn chain_components(ring: &Ring, f: &ComplexMap, hi: i32) -> Vec<MatrixDoc> {
    (0..=hi).map(|i| MatrixDoc::encode(ring, f.component(i).matrix())).collect()
}

fn encode_step(ring: &Ring, s: &StepRecord) -> StepDoc {
    let n = s.index as i32;
    StepDoc {
        index: s.index,
        x: s.x.to_canonical(ring),
        z: ComplexDoc::encode(&s.z),
        tau: SesDoc::encode(&s.tau),
        pullback: SesDoc::encode(&s.pullback),
        section: MatrixDoc::encode(ring, s.section.matrix()),
        retraction: MatrixDoc::encode(ring, s.retraction.matrix()),
        h: MatrixDoc::encode(ring, s.h.matrix()),
        top_map: MatrixDoc::encode(ring, s.top_map.matrix()),
        result: ComplexDoc::encode(s.chain_map.source()),
        chain_map: chain_components(ring, &s.chain_map, n),
    }
}

pub fn encode_reconstruction(cert: &ReconstructionCertificate) -> ReconstructionDoc {
    let ring = cert.ring();
    let n = cert.n() as i32;
    let strings = |ps: &[crate::poly::Poly]| ps.iter().map(|p| p.to_canonical(ring)).collect::<Vec<_>>();
    ReconstructionDoc {
        kind: "reconstruction".into(),
        version: FORMAT_VERSION,
        ring: RingDoc::encode(ring),
        module: ModuleDoc::encode(&cert.module),
        xs: strings(&cert.xs),
        k: cert.k,
        per_variable: cert.per_variable.clone(),
        powers: strings(&cert.powers),
        complex: ComplexDoc::encode(&cert.complex),
        top: TopDoc {
            slots: cert.top.slots.clone(),
            multiplicities: cert.top.multiplicities.clone(),
            iso: MatrixDoc::encode(ring, cert.top.iso.matrix()),
            inverse: MatrixDoc::encode(ring, cert.top.inverse.matrix()),
        },
        section: MatrixDoc::encode(ring, cert.section.matrix()),
        retraction: MatrixDoc::encode(ring, cert.retraction.matrix()),
        steps: cert.steps.iter().map(|s| encode_step(ring, s)).collect(),
        koszul: ComplexDoc::encode(&cert.koszul),
        chain_map: chain_components(ring, &cert.chain_map, n),
        homology: HomologyDoc {
            verdict: cert.homology_report.verdict,
            degrees: cert
                .homology_report
                .degrees
                .iter()
                .map(|d| HomologyDegreeDoc { degree: d.degree, complex: d.left.into(), koszul: d.right.into() })
                .collect(),
        },
    }
}

fn identity_check(f: Result<ModuleMap, crate::Error>, path: &str, what: &str, failures: &mut Vec<Failure>) {
    match f {
        Ok(c) if c.is_identity() => {}
        Ok(_) => failures.push(Failure::new(path, "IDENTITY", format!("{what} is not the identity"))),
        Err(e) => failures.push(Failure::new(path, "IDENTITY", format!("{what}: {e}"))),
    }
}

fn decode_chain(
    dec: &Decoder,
    source: &Complex,
    target: &Complex,
    docs: &[MatrixDoc],
    path: &str,
) -> Decoded<ComplexMap> {
    let comps = docs
        .iter()
        .enumerate()
        .map(|(i, d)| dec.map(&source.term(i as i32), &target.term(i as i32), d, &format!("{path}[{i}]")))
        .collect::<Decoded<Vec<_>>>()?;
    ComplexMap::new(source, target, comps).map_err(|e| Failure::new(path, "CHAIN_MAP", e.to_string()))
}

fn check_step(
    dec: &Decoder,
    doc: &StepDoc,
    prev: &Complex,
    power: &crate::poly::Poly,
    i: usize,
    failures: &mut Vec<Failure>,
) -> Decoded<Complex> {
    let path = format!("$.steps[{i}]");
    let n = (i + 1) as i32;
    if doc.index != i + 1 {
        failures.push(Failure::new(&format!("{path}.index"), "STEP", "step index out of order"));
    }
    let x = dec.poly(&doc.x, &format!("{path}.x"))?;
    if x != *power {
        failures.push(Failure::new(&format!("{path}.x"), "STEP", "element differs from the recorded power"));
    }
    let z = dec.complex(&doc.z, &format!("{path}.z"))?;
    if z != tensor_koszul_one(prev, &x).complex {
        failures.push(Failure::new(&format!("{path}.z"), "STEP", "z is not the tensor with K(x, R)"));
    }
    let tau = dec.ses(&doc.tau, &format!("{path}.tau"))?;
    if !tau.check().holds() {
        failures.push(Failure::new(&format!("{path}.tau"), "EXACTNESS", format!("{:?}", tau.check())));
    }
    let pb = dec.ses(&doc.pullback, &format!("{path}.pullback"))?;
    if !pb.check().holds() {
        failures.push(Failure::new(&format!("{path}.pullback"), "EXACTNESS", format!("{:?}", pb.check())));
    }
    let s = dec.map(pb.right(), pb.mid(), &doc.section, &format!("{path}.section"))?;
    let r = dec.map(pb.mid(), pb.left(), &doc.retraction, &format!("{path}.retraction"))?;
    identity_check(pb.surj.compose(&s), &format!("{path}.section"), "surj ∘ s", failures);
    identity_check(r.compose(&pb.inj), &format!("{path}.retraction"), "r ∘ inj", failures);
    let result = dec.complex(&doc.result, &format!("{path}.result"))?;
    if result.lo() != 0 || result.hi() != n {
        return Err(Failure::new(&format!("{path}.result"), "STEP", "result must occupy degrees 0..=n"));
    }
    dec.map(&result.term(n - 1), &z.term(n - 1), &doc.h, &format!("{path}.h"))?;
    let top = dec.map(&result.term(n), &result.term(n - 1), &doc.top_map, &format!("{path}.top_map"))?;
    if top != result.diff(n) {
        failures.push(Failure::new(&format!("{path}.top_map"), "STEP", "top map differs from the top differential"));
    }
    let phi = decode_chain(dec, &result, &z, &doc.chain_map, &format!("{path}.chain_map"))?;
    match compare_homology(&result, &z, Some(&phi), STAIRCASE_BOUND) {
        Ok(rep) if rep.verdict == Verdict::QuasiIso => {}
        Ok(rep) => failures.push(Failure::new(&format!("{path}.chain_map"), "HOMOLOGY", format!("verdict {}", rep.verdict))),
        Err(e) => failures.push(Failure::new(&format!("{path}.chain_map"), "HOMOLOGY", e.to_string())),
    }
    Ok(result)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check(doc: &ReconstructionDoc, value: &Value, failures: &mut Vec<Failure>) -> Decoded<()> {
    if doc.version != FORMAT_VERSION {
        return Err(Failure::new("$.version", "PARSE", format!("unsupported version {}", doc.version)));
    }
    let dec = Decoder::new(&doc.ring, "$.ring")?;
    let ring = dec.ring.clone();
    let m = dec.module(&doc.module, "$.module")?;
    let xs = dec.polys(&doc.xs, "$.xs")?;
    let n = xs.len();
    if n == 0 {
        return Err(Failure::new("$.xs", "PARSE", "empty sequence"));
    }
    let powers = dec.polys(&doc.powers, "$.powers")?;
    if powers.len() != n || powers.iter().zip(&xs).any(|(p, x)| *p != ring.reduce(&x.pow(&ring, doc.k))) {
        failures.push(Failure::new("$.powers", "POWER", "powers are not x_p^k"));
    }
    match find_power(&m, &xs, doc.k.max(1)) {
        Ok(s) if s.k == doc.k && s.per_variable == doc.per_variable => {}
        Ok(s) => failures.push(Failure::new("$.k", "HYPOTHESIS", format!("minimal power is {} ({:?})", s.k, s.per_variable))),
        Err(e) => failures.push(Failure::new("$.k", "HYPOTHESIS", e.to_string())),
    }

    let x = dec.complex(&doc.complex, "$.complex")?;
    let top_deg = n as i32;
    if x.lo() != 0 || x.hi() != top_deg {
        return Err(Failure::new("$.complex", "PARSE", "complex must occupy degrees 0..=n"));
    }
    for i in 0..top_deg {
        if !x.term(i).is_free_presentation() {
            failures.push(Failure::new(&format!("$.complex.terms[{i}]"), "NOT_FREE", "term below the top is not free"));
        }
    }

    let res = Resolution::compute(&m, n);
    let slots = &doc.top.slots;
    if slots.iter().any(|&s| s > n) {
        return Err(Failure::new("$.top.slots", "PARSE", "slot exceeds n"));
    }
    let omegas: Vec<FPModule> = (0..=n).map(|j| res.syzygy(j)).collect();
    let parts: Vec<&FPModule> = slots.iter().map(|&s| &omegas[s]).collect();
    let xn = x.term(top_deg);
    if direct_sum(&ring, &parts).module != xn {
        failures.push(Failure::new("$.top.slots", "TOP", "top term is not the recorded sum of syzygies"));
    }
    let mut mult = vec![0; n + 1];
    for &s in slots {
        mult[s] += 1;
    }
    let expected: Vec<usize> = (0..=n).map(|j| binomial(n, j)).collect();
    if mult != doc.top.multiplicities || mult != expected {
        failures.push(Failure::new("$.top.multiplicities", "TOP", format!("expected {expected:?}, slots give {mult:?}")));
    }
    let mut order: Vec<usize> = (0..slots.len()).collect();
    order.sort_by_key(|&i| (slots[i], i));
    let grouped_parts: Vec<&FPModule> = order.iter().map(|&i| parts[i]).collect();
    let grouped = direct_sum(&ring, &grouped_parts).module;
    let iso = dec.map(&xn, &grouped, &doc.top.iso, "$.top.iso")?;
    let inverse = dec.map(&grouped, &xn, &doc.top.inverse, "$.top.inverse")?;
    identity_check(inverse.compose(&iso), "$.top.iso", "inverse ∘ iso", failures);
    identity_check(iso.compose(&inverse), "$.top.inverse", "iso ∘ inverse", failures);

    let s = dec.map(&m, &xn, &doc.section, "$.section")?;
    let r = dec.map(&xn, &m, &doc.retraction, "$.retraction")?;
    identity_check(r.compose(&s), "$.retraction", "r ∘ s", failures);

    if doc.steps.len() != n {
        return Err(Failure::new("$.steps", "PARSE", "one step per element is required"));
    }
    let mut prev = Complex::concentrated(&m, 0);
    for (i, sd) in doc.steps.iter().enumerate() {
        let power = powers.get(i).cloned().unwrap_or_else(|| xs[i].clone());
        prev = check_step(&dec, sd, &prev, &power, i, failures)?;
    }
    if prev != x {
        failures.push(Failure::new("$.steps", "STEP", "last step does not produce the recorded complex"));
    }

    let kz = dec.complex(&doc.koszul, "$.koszul")?;
    if kz != koszul(&powers, &m) {
        failures.push(Failure::new("$.koszul", "KOSZUL", "not the Koszul complex of the powers"));
    }
    let chain = decode_chain(&dec, &x, &kz, &doc.chain_map, "$.chain_map")?;
    match compare_homology(&x, &kz, Some(&chain), STAIRCASE_BOUND) {
        Ok(rep) => {
            let dims: Vec<HomologyDegreeDoc> = rep
                .degrees
                .iter()
                .map(|d| HomologyDegreeDoc { degree: d.degree, complex: d.left.into(), koszul: d.right.into() })
                .collect();
            if rep.verdict != doc.homology.verdict || rep.verdict < Verdict::HomologyMatch {
                failures.push(Failure::new("$.homology.verdict", "HOMOLOGY", format!("recomputed verdict {}", rep.verdict)));
            }
            if dims != doc.homology.degrees {
                failures.push(Failure::new("$.homology.degrees", "HOMOLOGY", "recorded dimensions differ"));
            }
        }
        Err(e) => failures.push(Failure::new("$.homology", "HOMOLOGY", e.to_string())),
    }

    let search = PowerSearch { k: doc.k, per_variable: doc.per_variable.clone() };
    match reconstruct_with_power(&m, &xs, search) {
        Ok(cert) => {
            let replayed = serde_json::to_value(encode_reconstruction(&cert)).expect("documents serialize");
            if let Some(p) = first_difference(value, &replayed, "$") {
                failures.push(Failure::new(&p, "REPLAY", "differs from the recomputed certificate"));
            }
        }
        Err(e) => failures.push(Failure::new("$", "REPLAY", e.to_string())),
    }
    Ok(())
}

/// Checks a reconstruction document from its raw data alone.
pub fn verify_reconstruction(value: &Value) -> VerifyReport {
    let doc: ReconstructionDoc = match serde_json::from_value(value.clone()) {
        Ok(d) => d,
        Err(e) => return VerifyReport::from_failures("reconstruction", None, vec![Failure::new("$", "PARSE", e.to_string())]),
    };
    let mut failures = Vec::new();
    if let Err(f) = check(&doc, value, &mut failures) {
        failures.push(f);
    }
    VerifyReport::from_failures("reconstruction", None, failures)
}
