//! Line-oriented session files.
//!
//! ```text
//! ring p=7 vars=x,y order=grevlex ideal=[x^2 - y^3]
//! module M rank=1 rels=[[x]]
//! seq s = [y]
//! cmd reconstruct M s --kmax 16
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Polynomials are
//! kept as parsed over the ambient polynomial ring and printed in canonical
//! form, so a canonical file serializes back byte for byte.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use kosrec_core::fpmod::FPModule;
use kosrec_core::{FreeVector, MonomialOrder, Poly, Ring};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: String,
    pub rank: usize,
    pub rels: Vec<Vec<Poly>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqDecl {
    pub name: String,
    pub elems: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    /// The ambient polynomial ring `F_p[vars]`.
    pub base: Arc<Ring>,
    /// Defining ideal as written.
    pub ideal: Vec<Poly>,
    /// `F_p[vars] / ideal`.
    pub ring: Arc<Ring>,
    pub modules: Vec<ModuleDecl>,
    pub seqs: Vec<SeqDecl>,
    pub commands: Vec<Vec<String>>,
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("line {line}: {msg}"))
}

/// Splits on `sep` outside brackets and parentheses.
fn split_top(s: &str, sep: impl Fn(char) -> bool) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ if depth == 0 && sep(c) => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|t| !t.is_empty()).collect()
}

fn bracketed(s: &str) -> Option<&str> {
    s.strip_prefix('[')?.strip_suffix(']')
}

fn parse_list(base: &Ring, s: &str, line: usize) -> Result<Vec<Poly>, CliError> {
    let inner = bracketed(s.trim()).ok_or_else(|| parse_err(line, format!("expected a bracketed list, found `{s}`")))?;
    split_top(inner, |c| c == ',')
        .into_iter()
        .map(|t| Poly::parse(base, t).map_err(|e| parse_err(line, e)))
        .collect()
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn key_values<'a>(
    tokens: &[&'a str],
    allowed: &[&str],
    line: usize,
) -> Result<Vec<(&'a str, &'a str)>, CliError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for t in tokens {
        let (k, v) = t.split_once('=').ok_or_else(|| parse_err(line, format!("expected key=value, found `{t}`")))?;
        if !allowed.contains(&k) {
            return Err(parse_err(line, format!("unknown key `{k}`")));
        }
        if !seen.insert(k) {
            return Err(parse_err(line, format!("duplicate key `{k}`")));
        }
        out.push((k, v));
    }
    Ok(out)
}

/// Positions of module and sequence arguments for commands that may appear
/// in a session file.
fn reference_slots(cmd: &str) -> Option<(&'static [usize], &'static [usize])> {
    Some(match cmd {
        "gb" => (&[1], &[]),
        "resolve" | "syzygy" => (&[1], &[]),
        "ext" => (&[1, 2], &[]),
        "koszul" => (&[2], &[1]),
        "reconstruct" | "flball" => (&[1], &[2]),
        _ => return None,
    })
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, CliError> {
        let mut ring_decl: Option<(Arc<Ring>, Vec<Poly>, Arc<Ring>)> = None;
        let mut modules: Vec<ModuleDecl> = Vec::new();
        let mut seqs: Vec<SeqDecl> = Vec::new();
        let mut commands = Vec::new();
        let mut names = BTreeSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            let tokens = split_top(rest, char::is_whitespace);
            match head {
                "ring" => {
                    if ring_decl.is_some() {
                        return Err(parse_err(line, "second ring declaration"));
                    }
                    let kv = key_values(&tokens, &["p", "vars", "order", "ideal"], line)?;
                    let get = |k: &str| kv.iter().find(|(a, _)| *a == k).map(|(_, v)| *v);
                    let p: u32 = get("p")
                        .ok_or_else(|| parse_err(line, "missing key `p`"))?
                        .parse()
                        .map_err(|_| parse_err(line, "p must be an integer"))?;
                    let vars: Vec<String> = get("vars")
                        .ok_or_else(|| parse_err(line, "missing key `vars`"))?
                        .split(',')
                        .map(|v| v.trim().to_string())
                        .collect();
                    if vars.iter().any(|v| !is_ident(v)) {
                        return Err(parse_err(line, "variable names must be identifiers"));
                    }
                    let order = match get("order") {
                        None => MonomialOrder::Grevlex,
                        Some(o) => MonomialOrder::parse(o).ok_or_else(|| parse_err(line, format!("unknown order `{o}`")))?,
                    };
                    let base = Arc::new(Ring::bare(p, vars.clone(), order).map_err(|e| parse_err(line, e))?);
                    let ideal = match get("ideal") {
                        None => Vec::new(),
                        Some(s) => parse_list(&base, s, line)?,
                    };
                    let ring = Ring::new(p, vars, order, ideal.clone()).map_err(|e| parse_err(line, e))?;
                    ring_decl = Some((base, ideal, ring));
                }
                "module" | "seq" | "cmd" if ring_decl.is_none() => {
                    return Err(parse_err(line, "the ring must be declared first"));
                }
                "module" => {
                    let base = &ring_decl.as_ref().unwrap().0;
                    let (name, kvs) = tokens.split_first().ok_or_else(|| parse_err(line, "module needs a name"))?;
                    if !is_ident(name) || !names.insert(name.to_string()) {
                        return Err(parse_err(line, format!("bad or repeated name `{name}`")));
                    }
                    let kv = key_values(kvs, &["rank", "rels"], line)?;
                    let get = |k: &str| kv.iter().find(|(a, _)| *a == k).map(|(_, v)| *v);
                    let rank: usize = get("rank")
                        .ok_or_else(|| parse_err(line, "missing key `rank`"))?
                        .parse()
                        .map_err(|_| parse_err(line, "rank must be a non-negative integer"))?;
                    let rels = match get("rels") {
                        None => Vec::new(),
                        Some(s) => {
                            let inner = bracketed(s).ok_or_else(|| parse_err(line, "rels must be a list of lists"))?;
                            split_top(inner, |c| c == ',')
                                .into_iter()
                                .map(|r| parse_list(base, r, line))
                                .collect::<Result<Vec<_>, _>>()?
                        }
                    };
                    if let Some(r) = rels.iter().find(|r| r.len() != rank) {
                        return Err(parse_err(line, format!("relation has {} entries, rank is {rank}", r.len())));
                    }
                    modules.push(ModuleDecl { name: name.to_string(), rank, rels });
                }
                "seq" => {
                    let base = &ring_decl.as_ref().unwrap().0;
                    let (name, value) = rest
                        .split_once('=')
                        .map(|(a, b)| (a.trim(), b.trim()))
                        .ok_or_else(|| parse_err(line, "expected `seq NAME = [...]`"))?;
                    if !is_ident(name) || !names.insert(name.to_string()) {
                        return Err(parse_err(line, format!("bad or repeated name `{name}`")));
                    }
                    seqs.push(SeqDecl { name: name.to_string(), elems: parse_list(base, value, line)? });
                }
                "cmd" => {
                    let args: Vec<String> = rest.split_whitespace().map(String::from).collect();
                    let cmd = args.first().ok_or_else(|| parse_err(line, "empty command"))?;
                    let (mods, ss) = reference_slots(cmd)
                        .ok_or_else(|| parse_err(line, format!("command `{cmd}` cannot appear in a session")))?;
                    for &i in mods {
                        if let Some(a) = args.get(i) {
                            if !modules.iter().any(|m| &m.name == a) {
                                return Err(parse_err(line, format!("module `{a}` is not declared")));
                            }
                        }
                    }
                    for &i in ss {
                        if let Some(a) = args.get(i) {
                            if is_ident(a) && !seqs.iter().any(|s| &s.name == a) {
                                return Err(parse_err(line, format!("sequence `{a}` is not declared")));
                            }
                        }
                    }
                    commands.push(args);
                }
                other => return Err(parse_err(line, format!("unknown declaration `{other}`"))),
            }
        }
        let (base, ideal, ring) = ring_decl.ok_or_else(|| CliError::Parse("no ring declaration".into()))?;
        Ok(Session { base, ideal, ring, modules, seqs, commands })
    }

    pub fn serialize(&self) -> String {
        let b = &*self.base;
        let list = |ps: &[Poly]| format!("[{}]", ps.iter().map(|p| p.to_canonical(b)).collect::<Vec<_>>().join(", "));
        let mut out = String::new();
        write!(
            out,
            "ring p={} vars={} order={}",
            b.characteristic(),
            b.var_names().join(","),
            b.order().name()
        )
        .unwrap();
        if !self.ideal.is_empty() {
            write!(out, " ideal={}", list(&self.ideal)).unwrap();
        }
        out.push('\n');
        for m in &self.modules {
            write!(out, "module {} rank={}", m.name, m.rank).unwrap();
            if !m.rels.is_empty() {
                let rels: Vec<String> = m.rels.iter().map(|r| list(r)).collect();
                write!(out, " rels=[{}]", rels.join(", ")).unwrap();
            }
            out.push('\n');
        }
        for s in &self.seqs {
            writeln!(out, "seq {} = {}", s.name, list(&s.elems)).unwrap();
        }
        for c in &self.commands {
            writeln!(out, "cmd {}", c.join(" ")).unwrap();
        }
        out
    }

    pub fn module(&self, name: &str) -> Result<FPModule, CliError> {
        let decl = self
            .modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CliError::Parse(format!("module `{name}` is not declared")))?;
        let rels: Vec<FreeVector> = decl.rels.iter().map(|r| FreeVector::new(r.clone())).collect();
        Ok(FPModule::new(self.ring.clone(), decl.rank, &rels)?)
    }

    /// A declared sequence name, or an inline comma-separated list.
    pub fn sequence(&self, arg: &str) -> Result<Vec<Poly>, CliError> {
        if let Some(s) = self.seqs.iter().find(|s| s.name == arg) {
            return Ok(s.elems.clone());
        }
        let inner = bracketed(arg.trim()).unwrap_or(arg);
        split_top(inner, |c| c == ',')
            .into_iter()
            .map(|t| Poly::parse(&self.base, t).map_err(|e| CliError::Parse(format!("sequence `{arg}`: {e}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUSP: &str = "ring p=7 vars=x,y order=grevlex ideal=[-x^2 + y^3]\nmodule M rank=1 rels=[[x]]\nseq s = [y]\ncmd reconstruct M s --kmax 16\n";

    #[test]
    fn canonical_file_round_trips() {
        let s = Session::parse(CUSP).unwrap();
        assert_eq!(Session::parse(&s.serialize()).unwrap(), s);
        let canonical = s.serialize();
        assert_eq!(Session::parse(&canonical).unwrap().serialize(), canonical);
    }

    #[test]
    fn spacing_and_comments_are_tolerated() {
        let text = "# cusp\nring p=7 vars=x,y order=grevlex ideal=[x^2-y^3]\n\nmodule M rank=2 rels=[[x, y], [0,x]]\nseq s = [y, x+y]\n";
        let s = Session::parse(text).unwrap();
        assert_eq!(s.modules[0].rels.len(), 2);
        assert_eq!(s.seqs[0].elems.len(), 2);
        assert_eq!(Session::parse(&s.serialize()).unwrap(), s);
        assert_eq!(s.module("M").unwrap().rank(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            "ring p=7 vars=x colour=red\n",
            "ring p=9 vars=x\n",
            "ring p=7 vars=x\nmodule M rank=1 rels=[[x, x]]\n",
            "module M rank=1\n",
            "ring p=7 vars=x\ncmd resolve N 3\n",
            "ring p=7 vars=x\nmodule M rank=1 rels=[[z]]\n",
            "ring p=7 vars=x\nmodule M rank=1\nmodule M rank=2\n",
            "ring p=7 vars=x\nmodule M rank=1\ncmd reconstruct M t\n",
            "ring p=7 vars=x\nfrobnicate\n",
        ] {
            assert!(matches!(Session::parse(bad), Err(CliError::Parse(_))), "{bad:?} accepted");
        }
    }

    #[test]
    fn inline_sequences() {
        let s = Session::parse("ring p=5 vars=x,y\n").unwrap();
        assert_eq!(s.sequence("x,y").unwrap().len(), 2);
        assert_eq!(s.sequence("[x^2]").unwrap().len(), 1);
        assert!(s.sequence("q").is_err());
    }
}
