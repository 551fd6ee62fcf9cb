//! Group description files.
//!
//! A file is a list of `key: value` lines. Either one `family:` line names a
//! recipe or one or more `gen:` lines give permutations in 1-based cycle
//! notation. An optional `cap:` line bounds element enumeration, and with
//! `gen:` lines an optional `degree:` line pads the point set. `;` separates
//! lines as well as newlines do, `#` starts a comment and `[...]` nests a
//! whole description inside an argument.

use maxdim_core::harness::Recipe;
use maxdim_core::{is_prime, Permutation};

/// Largest point accepted in cycle notation.
pub const MAX_POINT: usize = 4096;
/// Largest integer accepted as a family parameter.
pub const MAX_PARAM: usize = 1 << 20;
/// Largest module dimension accepted in a module file.
pub const MAX_MODULE_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("parse error at line {line}: unknown family `{name}`")]
    UnknownFamily { line: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub recipe: Recipe,
    pub cap: Option<usize>,
}

/// Reads the file a `semidirect <path>` argument points to.
pub type Resolver<'a> = &'a dyn Fn(&str) -> Result<String, String>;

pub fn no_files(path: &str) -> Result<String, String> {
    Err(format!("file references are disabled here: {path}"))
}

pub fn read_files(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn err(line: usize, msg: impl Into<String>) -> SpecError {
    SpecError::Parse { line, msg: msg.into() }
}

/// Splits at `;` and newlines outside brackets, dropping comments and blanks.
fn logical_lines(text: &str) -> Result<Vec<(usize, String)>, SpecError> {
    let mut out = Vec::new();
    let (mut line, mut start_line) = (1, 1);
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut comment = false;
    let mut flush = |cur: &mut String, at: usize| {
        let t = cur.trim();
        if !t.is_empty() {
            out.push((at, t.to_string()));
        }
        cur.clear();
    };
    for ch in text.chars() {
        if ch == '\n' {
            comment = false;
        } else if comment {
            continue;
        } else if ch == '#' {
            comment = true;
            continue;
        }
        match ch {
            '[' => depth += 1,
            ']' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| err(line, "unbalanced `]`"))?;
            }
            _ => {}
        }
        if depth == 0 && (ch == ';' || ch == '\n') {
            flush(&mut cur, start_line);
            if ch == '\n' {
                line += 1;
            }
            start_line = line;
            continue;
        }
        if ch == '\n' {
            line += 1;
            cur.push(' ');
            continue;
        }
        if cur.trim().is_empty() {
            start_line = line;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(err(line, "unbalanced `[`"));
    }
    flush(&mut cur, start_line);
    Ok(out)
}

/// Whitespace-separated words with `[...]` groups kept whole (brackets stripped).
fn words(s: &str, line: usize) -> Result<Vec<String>, SpecError> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                if depth > 0 {
                    cur.push(ch);
                } else if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
                depth += 1;
            }
            ']' => {
                depth = depth.checked_sub(1).ok_or_else(|| err(line, "unbalanced `]`"))?;
                if depth > 0 {
                    cur.push(ch);
                } else {
                    out.push(format!("[{}", std::mem::take(&mut cur)));
                }
            }
            c if c.is_whitespace() && depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(err(line, "unbalanced `[`"));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn split_key(l: &str, line: usize) -> Result<(&str, &str), SpecError> {
    let (k, v) = l
        .split_once(':')
        .ok_or_else(|| err(line, format!("expected `key: value`, got `{l}`")))?;
    Ok((k.trim(), v.trim()))
}

fn number(w: &str, line: usize) -> Result<usize, SpecError> {
    let n: usize = w
        .parse()
        .map_err(|_| err(line, format!("expected a number, got `{w}`")))?;
    if n > MAX_PARAM {
        return Err(err(line, format!("{n} exceeds {MAX_PARAM}")));
    }
    Ok(n)
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)` into 0-based cycles.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>, String> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err("empty permutation; write `()` for the identity".into());
    }
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected `(` at `{rest}`"))?;
        let close = body.find(')').ok_or("missing `)`")?;
        let points = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(0) => Err("points are numbered from 1".to_string()),
                Ok(x) if x > MAX_POINT => Err(format!("point {x} exceeds {MAX_POINT}")),
                Ok(x) => Ok(x - 1),
                Err(_) => Err(format!("bad point `{t}`")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut sorted = points.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(format!("cycle ({}) repeats a point", &body[..close]));
        }
        if points.len() > 1 {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Cycle notation for one permutation, as written by [`parse_cycles`].
pub fn format_cycles(p: &Permutation) -> String {
    maxdim_core::harness::cycle_string(p)
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, SpecError> {
    parse_group_spec_with(text, &read_files)
}

pub fn parse_group_spec_with(text: &str, resolve: Resolver) -> Result<GroupSpec, SpecError> {
    parse_nested(text, resolve, 0)
}

const MAX_NESTING: usize = 16;

fn parse_nested(text: &str, resolve: Resolver, depth: usize) -> Result<GroupSpec, SpecError> {
    if depth > MAX_NESTING {
        return Err(err(1, "descriptions nested too deeply"));
    }
    let lines = logical_lines(text)?;
    let mut family: Option<(usize, String)> = None;
    let mut gens: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    let mut cap = None;
    let mut degree = None;
    for (line, l) in &lines {
        let (key, value) = split_key(l, *line)?;
        match key {
            "family" => {
                if family.replace((*line, value.to_string())).is_some() {
                    return Err(err(*line, "more than one `family:` line"));
                }
            }
            "gen" => gens.push((*line, parse_cycles(value).map_err(|m| err(*line, m))?)),
            "cap" => {
                if cap.replace(number(value, *line)?).is_some() {
                    return Err(err(*line, "more than one `cap:` line"));
                }
            }
            "degree" => {
                let d = number(value, *line)?;
                if d == 0 || d > MAX_POINT {
                    return Err(err(*line, format!("degree must be in 1..={MAX_POINT}")));
                }
                if degree.replace(d).is_some() {
                    return Err(err(*line, "more than one `degree:` line"));
                }
            }
            other => return Err(err(*line, format!("unknown key `{other}`"))),
        }
    }
    let recipe = match (family, gens.is_empty()) {
        (Some(_), false) => return Err(err(lines[0].0, "use either `family:` or `gen:` lines, not both")),
        (None, true) => return Err(err(1, "no `family:` or `gen:` line")),
        (Some((line, value)), true) => {
            if degree.is_some() {
                return Err(err(line, "`degree:` only applies to `gen:` lines"));
            }
            let r = parse_family(&value, line, resolve, depth)?;
            r.validate().map_err(|e| err(line, e.to_string()))?;
            r
        }
        (None, false) => {
            let moved = gens
                .iter()
                .flat_map(|(_, cs)| cs.iter().flatten())
                .max()
                .map_or(1, |&x| x + 1);
            let n = degree.unwrap_or(moved);
            if n < moved {
                return Err(err(gens[0].0, format!("degree {n} is smaller than point {moved}")));
            }
            let perms = gens
                .iter()
                .map(|(line, cs)| Permutation::from_cycles(n, cs).map_err(|e| err(*line, e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Recipe::Permutations { degree: n, gens: perms }
        }
    };
    Ok(GroupSpec { recipe, cap })
}

fn args_exactly<'a>(args: &'a [String], n: usize, name: &str, line: usize) -> Result<&'a [String], SpecError> {
    if args.len() != n {
        return Err(err(line, format!("`{name}` takes {n} argument(s), got {}", args.len())));
    }
    Ok(args)
}

fn nested_body(w: &str, line: usize) -> Result<&str, SpecError> {
    w.strip_prefix('[')
        .ok_or_else(|| err(line, format!("expected a bracketed description, got `{w}`")))
}

fn parse_family(value: &str, line: usize, resolve: Resolver, depth: usize) -> Result<Recipe, SpecError> {
    let ws = words(value, line)?;
    let (name, args) = ws.split_first().ok_or_else(|| err(line, "empty family"))?;
    let num = |k: usize| number(&args[k], line);
    let one = || args_exactly(args, 1, name, line).and_then(|a| number(&a[0], line));
    Ok(match name.as_str() {
        "cyclic" => Recipe::Cyclic(one()?),
        "dihedral" => Recipe::Dihedral(one()?),
        "symmetric" => Recipe::Symmetric(one()?),
        "alternating" => Recipe::Alternating(one()?),
        "elementaryAbelian" => {
            args_exactly(args, 2, name, line)?;
            Recipe::ElementaryAbelian(num(0)?, num(1)?)
        }
        "quaternion" => {
            args_exactly(args, 1, name, line)?;
            if num(0)? != 8 {
                return Err(err(line, "only `quaternion 8` is available"));
            }
            Recipe::Quaternion8
        }
        "wreathCyclic" => Recipe::WreathCyclic(one()?),
        "psl2" => {
            args_exactly(args, 1, name, line)?;
            Recipe::Psl2(u32::try_from(num(0)?).map_err(|_| err(line, "prime too large"))?)
        }
        "directProduct" => {
            args_exactly(args, 2, name, line)?;
            let inner = |w: &str| -> Result<Recipe, SpecError> {
                let spec = parse_nested(nested_body(w, line)?, resolve, depth + 1).map_err(|e| relocate(e, line))?;
                if spec.cap.is_some() {
                    return Err(err(line, "`cap:` is only allowed at the top level"));
                }
                Ok(spec.recipe)
            };
            Recipe::product(inner(&args[0])?, inner(&args[1])?)
        }
        "semidirect" => {
            args_exactly(args, 1, name, line)?;
            let text = match args[0].strip_prefix('[') {
                Some(body) => body.to_string(),
                None => resolve(&args[0]).map_err(|m| err(line, m))?,
            };
            parse_module_nested(&text, resolve, depth + 1).map_err(|e| relocate(e, line))?
        }
        other => {
            return Err(SpecError::UnknownFamily {
                line,
                name: other.to_string(),
            })
        }
    })
}

/// Errors inside a bracketed argument are reported at the enclosing line.
fn relocate(e: SpecError, line: usize) -> SpecError {
    match e {
        SpecError::Parse { msg, .. } => SpecError::Parse { line, msg },
        SpecError::UnknownFamily { name, .. } => SpecError::UnknownFamily { line, name },
    }
}

/// Parses a module file: `p:`, `top:` (a bracketed description) and one
/// `matrix:` line per generator of the top group, rows separated by `/`.
/// Returns the corresponding semidirect recipe.
pub fn parse_module_file(text: &str) -> Result<Recipe, SpecError> {
    parse_module_nested(text, &no_files, 0)
}

fn parse_module_nested(text: &str, resolve: Resolver, depth: usize) -> Result<Recipe, SpecError> {
    if depth > MAX_NESTING {
        return Err(err(1, "descriptions nested too deeply"));
    }
    let lines = logical_lines(text)?;
    let mut p = None;
    let mut top = None;
    let mut matrices: Vec<Vec<Vec<u32>>> = Vec::new();
    for (line, l) in &lines {
        let (key, value) = split_key(l, *line)?;
        match key {
            "p" => {
                let q = number(value, *line)?;
                if !is_prime(q as u64) || q > u16::MAX as usize {
                    return Err(err(*line, format!("{q} is not a prime below 65536")));
                }
                if p.replace(q as u32).is_some() {
                    return Err(err(*line, "more than one `p:` line"));
                }
            }
            "top" => {
                let body = nested_body(value, *line)?;
                let body = body
                    .strip_suffix(']')
                    .ok_or_else(|| err(*line, "expected `[...]`"))?;
                let spec = parse_nested(body, resolve, depth + 1).map_err(|e| relocate(e, *line))?;
                if top.replace(spec.recipe).is_some() {
                    return Err(err(*line, "more than one `top:` line"));
                }
            }
            "matrix" => {
                let rows = value
                    .split('/')
                    .map(|row| {
                        row.split_whitespace()
                            .map(|t| {
                                t.parse::<u32>()
                                    .map_err(|_| err(*line, format!("bad matrix entry `{t}`")))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let d = rows.len();
                if d == 0 || d > MAX_MODULE_DIM || rows.iter().any(|r| r.len() != d) {
                    return Err(err(*line, format!("matrix must be square of size 1..={MAX_MODULE_DIM}")));
                }
                if let Some(first) = matrices.first() {
                    if first.len() != d {
                        return Err(err(*line, "matrices of different sizes"));
                    }
                }
                matrices.push(rows);
            }
            other => return Err(err(*line, format!("unknown key `{other}`"))),
        }
    }
    let p = p.ok_or_else(|| err(1, "missing `p:` line"))?;
    let top = top.ok_or_else(|| err(1, "missing `top:` line"))?;
    if matrices.is_empty() {
        return Err(err(1, "missing `matrix:` line"));
    }
    if matrices.iter().flatten().flatten().any(|&x| x >= p) {
        return Err(err(1, format!("matrix entries must be residues below {p}")));
    }
    Ok(Recipe::Semidirect {
        top: Box::new(top),
        p,
        matrices,
    })
}

fn matrix_text(m: &[Vec<u32>]) -> String {
    m.iter()
        .map(|row| row.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn module_lines(top: &Recipe, p: u32, matrices: &[Vec<Vec<u32>>]) -> Vec<String> {
    let mut out = vec![format!("p: {p}"), format!("top: [{}]", inline(top))];
    out.extend(matrices.iter().map(|m| format!("matrix: {}", matrix_text(m))));
    out
}

/// Canonical module file text for a semidirect recipe.
pub fn serialize_module_file(recipe: &Recipe) -> Option<String> {
    let Recipe::Semidirect { top, p, matrices } = recipe else {
        return None;
    };
    Some(module_lines(top, *p, matrices).join("\n") + "\n")
}

fn recipe_lines(r: &Recipe) -> Vec<String> {
    let fam = |s: String| vec![format!("family: {s}")];
    match r {
        Recipe::Cyclic(n) => fam(format!("cyclic {n}")),
        Recipe::Dihedral(n) => fam(format!("dihedral {n}")),
        Recipe::Symmetric(n) => fam(format!("symmetric {n}")),
        Recipe::Alternating(n) => fam(format!("alternating {n}")),
        Recipe::ElementaryAbelian(p, k) => fam(format!("elementaryAbelian {p} {k}")),
        Recipe::Quaternion8 => fam("quaternion 8".into()),
        Recipe::WreathCyclic(p) => fam(format!("wreathCyclic {p}")),
        Recipe::Psl2(p) => fam(format!("psl2 {p}")),
        Recipe::DirectProduct(a, b) => fam(format!("directProduct [{}] [{}]", inline(a), inline(b))),
        Recipe::Semidirect { top, p, matrices } => {
            fam(format!("semidirect [{}]", module_lines(top, *p, matrices).join("; ")))
        }
        Recipe::Permutations { degree, gens } => {
            let mut out: Vec<String> = gens.iter().map(|g| format!("gen: {}", format_cycles(g))).collect();
            let moved = gens
                .iter()
                .flat_map(|g| g.cycles().into_iter().flatten())
                .max()
                .map_or(1, |x| x + 1);
            if *degree != moved {
                out.push(format!("degree: {degree}"));
            }
            out
        }
    }
}

fn inline(r: &Recipe) -> String {
    recipe_lines(r).join("; ")
}

/// Canonical text; parsing it gives back the same spec.
pub fn serialize_group_spec(spec: &GroupSpec) -> String {
    let mut lines = recipe_lines(&spec.recipe);
    if let Some(c) = spec.cap {
        lines.push(format!("cap: {c}"));
    }
    lines.join("\n") + "\n"
}

/// One-line canonical form, used in reports and cache keys.
pub fn canonical_inline(spec: &GroupSpec) -> String {
    let mut s = inline(&spec.recipe);
    if let Some(c) = spec.cap {
        s.push_str(&format!("; cap: {c}"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use maxdim_core::harness::corpus;

    fn parse(s: &str) -> Result<GroupSpec, SpecError> {
        parse_group_spec_with(s, &no_files)
    }

    #[test]
    fn families() {
        assert_eq!(parse("family: cyclic 6").unwrap().recipe, Recipe::Cyclic(6));
        assert_eq!(parse("family: quaternion 8").unwrap().recipe, Recipe::Quaternion8);
        let r = parse("family: directProduct [family: psl2 5] [family: psl2 5]").unwrap();
        assert_eq!(r.recipe, Recipe::product(Recipe::Psl2(5), Recipe::Psl2(5)));
        assert_eq!(parse("# comment\nfamily: symmetric 4 # trailing\ncap: 100").unwrap().cap, Some(100));
    }

    #[test]
    fn generators() {
        let r = parse("gen: (1 2)\ngen: (1 2 3)").unwrap().recipe;
        let Recipe::Permutations { degree, gens } = r else { panic!() };
        assert_eq!(degree, 3);
        assert_eq!(gens[0].images(), &[1, 0, 2]);
        assert_eq!(gens[1].images(), &[1, 2, 0]);
        assert_eq!(parse_cycles("()").unwrap(), Vec::<Vec<usize>>::new());
        assert!(parse_cycles("(1 1)").is_err());
        assert!(parse_cycles("(0 1)").is_err());
        assert!(parse_cycles("(1 2").is_err());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse("\n\nfamily: cyclic 0").unwrap_err().to_string(), "parse error at line 3: invalid input: cyclic order must be positive");
        assert!(matches!(parse("family: klein 4"), Err(SpecError::UnknownFamily { line: 1, .. })));
        assert!(matches!(parse("family: psl2 17"), Err(SpecError::Parse { line: 1, .. })));
        assert!(matches!(parse("cap: 5\nwhat: 3"), Err(SpecError::Parse { line: 2, .. })));
        assert!(parse("family: cyclic 3\ngen: (1 2)").is_err());
        assert!(parse("family: directProduct [family: cyclic 2]").is_err());
        assert!(parse("family: semidirect some/file").is_err());
    }

    #[test]
    fn module_files() {
        let text = "p: 3\ntop: [family: cyclic 2]\nmatrix: 2 0 / 0 2\n";
        let r = parse_module_file(text).unwrap();
        assert_eq!(serialize_module_file(&r).unwrap(), text);
        assert!(parse_module_file("p: 4\ntop: [family: cyclic 2]\nmatrix: 1").is_err());
        assert!(parse_module_file("p: 3\ntop: [family: cyclic 2]\nmatrix: 1 0 / 0").is_err());
        assert!(parse_module_file("p: 3\ntop: [family: cyclic 2]\nmatrix: 3").is_err());
        let resolve = |path: &str| {
            assert_eq!(path, "m.txt");
            Ok(text.to_string())
        };
        let g = parse_group_spec_with("family: semidirect m.txt", &resolve).unwrap();
        assert_eq!(g.recipe, r);
    }

    #[test]
    fn corpus_round_trips() {
        for e in corpus() {
            let spec = GroupSpec { recipe: e.recipe.clone(), cap: None };
            let text = serialize_group_spec(&spec);
            assert_eq!(parse(&text).unwrap(), spec, "{text}");
            assert_eq!(parse(&canonical_inline(&spec)).unwrap(), spec);
        }
        let spec = parse("gen: (2 3)\ndegree: 5\ncap: 7").unwrap();
        assert_eq!(parse(&serialize_group_spec(&spec)).unwrap(), spec);
    }
}
