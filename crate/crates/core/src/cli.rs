//! Command-line front end.
//!
//! Module files hold a header line `p r n` followed by one generator per
//! line (`n` integers each); blank lines and lines starting with `#` are
//! ignored, and entries are reduced modulo `p^r` on load. Commands that
//! produce a module print it in the same format, followed by a summary in
//! `#` comments, so their output can be fed back in.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 precondition violation, 4 enumeration limit exceeded.

use std::fmt::{self, Write as _};
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::duality::{dual, intersect, sum, verify_dimension_identities};
use crate::error::Error;
use crate::oracle::{enumerate_span, EnumerationGuard, DEFAULT_MAX_STATES};
use crate::pbasis::{extend_p_basis, socle, PBasis};
use crate::ring::RingParams;
use crate::submodule::Submodule;
use crate::vector::Vector;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_GUARD: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "zpr", version, about = "Standard forms, p-bases and duals of submodules of Z_{p^r}^n")]
pub struct Cli {
    /// Emit a single JSON document instead of the text report.
    #[arg(long, global = true)]
    pub json: bool,

    /// Upper bound on enumerated elements for `enumerate`.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    pub max_states: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Standard-form generator matrix, permutation and parameters.
    StandardForm { file: PathBuf },
    /// An ordered p-basis of the module.
    Pbasis { file: PathBuf },
    /// The dual module.
    Dual { file: PathBuf },
    /// The socle {v in M : p v = 0}.
    Socle { file: PathBuf },
    /// Digit coordinates of a vector against the module's p-basis.
    Member {
        file: PathBuf,
        /// Vector entries, either as separate arguments or one quoted string.
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        vector: Vec<String>,
    },
    /// Sum of two modules.
    Sum { a: PathBuf, b: PathBuf },
    /// Intersection of two modules.
    Intersect { a: PathBuf, b: PathBuf },
    /// Extend a p-basis of the first module to a p-basis of the second.
    Extend { sub: PathBuf, module: PathBuf },
    /// Check the size, dimension and parameter relations between M and its dual.
    Verify { file: PathBuf },
    /// List every element of the module.
    Enumerate { file: PathBuf },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

/// A parse failure, with a 1-based line number when one applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

/// The contents of a module file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleFile {
    pub ring: RingParams,
    pub n: usize,
    pub rows: Vec<Vector>,
}

impl ModuleFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut header: Option<(RingParams, usize)> = None;
        let mut rows = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| ParseError {
                line: Some(line_no),
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 3 {
                        return Err(err(format!("header must be `p r n`, found {} fields", fields.len())));
                    }
                    let p: u64 = fields[0].parse().map_err(|_| err(format!("bad prime `{}`", fields[0])))?;
                    let r: u32 = fields[1].parse().map_err(|_| err(format!("bad exponent `{}`", fields[1])))?;
                    let n: usize = fields[2].parse().map_err(|_| err(format!("bad length `{}`", fields[2])))?;
                    if n == 0 {
                        return Err(err("length n must be at least 1".into()));
                    }
                    let ring = RingParams::new(p, r).map_err(|e| err(e.to_string()))?;
                    header = Some((ring, n));
                }
                Some((ring, n)) => {
                    if fields.len() != n {
                        return Err(err(format!("expected {n} entries, found {}", fields.len())));
                    }
                    let coords = fields
                        .iter()
                        .map(|f| f.parse::<i64>().map_err(|_| err(format!("bad entry `{f}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    rows.push(Vector::new(ring, &coords));
                }
            }
        }
        let (ring, n) = header.ok_or(ParseError {
            line: None,
            message: "missing `p r n` header".into(),
        })?;
        Ok(ModuleFile { ring, n, rows })
    }

    pub fn submodule(&self) -> Submodule {
        Submodule::from_vectors(self.ring, self.n, &self.rows).expect("rows were parsed against the header")
    }
}

/// Renders rows as a module file body (header plus one row per line).
pub fn render_module(ring: RingParams, n: usize, rows: &[Vector]) -> String {
    let mut out = format!("{} {} {}\n", ring.p(), ring.r(), n);
    for row in rows {
        let _ = writeln!(out, "{row}");
    }
    out
}

enum Failure {
    Malformed(String),
    Precondition(String),
    Guard(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Malformed(_) => EXIT_MALFORMED,
            Failure::Precondition(_) => EXIT_PRECONDITION,
            Failure::Guard(_) => EXIT_GUARD,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Malformed(m) | Failure::Precondition(m) | Failure::Guard(m) => m,
        }
    }
}

fn load(path: &Path) -> Result<ModuleFile, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::Malformed(format!("stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?
    };
    ModuleFile::parse(&text).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))
}

fn load_pair(a: &Path, b: &Path) -> Result<(Submodule, Submodule), Failure> {
    let (fa, fb) = (load(a)?, load(b)?);
    if fa.ring != fb.ring || fa.n != fb.n {
        return Err(Failure::Malformed(format!(
            "{} and {} describe different ambient spaces",
            a.display(),
            b.display()
        )));
    }
    Ok((fa.submodule(), fb.submodule()))
}

fn rows_json(rows: &[Vector]) -> Vec<Vec<u64>> {
    rows.iter().map(|r| r.coords().to_vec()).collect()
}

fn cardinality_text(m: &Submodule) -> String {
    match m.cardinality() {
        Some(c) => c.to_string(),
        None => format!("{}^{}", m.ring().p(), m.p_dimension()),
    }
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct ModuleJson {
    p: u64,
    r: u32,
    n: usize,
    generators: Vec<Vec<u64>>,
    k: Vec<usize>,
    k_total: usize,
    cardinality: Option<u128>,
    p_dim: usize,
}

fn module_json(m: &Submodule) -> ModuleJson {
    ModuleJson {
        p: m.ring().p(),
        r: m.ring().r(),
        n: m.n(),
        generators: rows_json(&m.generators()),
        k: m.standard_form().k().to_vec(),
        k_total: m.standard_form().k_total(),
        cardinality: m.cardinality(),
        p_dim: m.p_dimension(),
    }
}

fn summary(m: &Submodule) -> String {
    let sf = m.standard_form();
    format!(
        "# k: {}\n# k(M): {}\n# |M|: {}\n# p-dim: {}\n",
        join(sf.k()),
        sf.k_total(),
        cardinality_text(m),
        m.p_dimension()
    )
}

fn module_report(title: &str, m: &Submodule) -> String {
    format!("# {title}\n{}{}", render_module(m.ring(), m.n(), &m.generators()), summary(m))
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn cmd_standard_form(m: &Submodule, as_json: bool) -> String {
    let sf = m.standard_form();
    if as_json {
        return to_json(&json!({
            "command": "standard-form",
            "module": module_json(m),
            "standard_form": {
                "rows": rows_json(sf.rows()),
                "levels": sf.levels(),
                "permutation": sf.permutation(),
            },
        }));
    }
    let mut out = module_report("standard form, original column order", m);
    out.push_str("# standard-form matrix, permuted columns:\n");
    for row in sf.rows() {
        let _ = writeln!(out, "#   {row}");
    }
    let _ = writeln!(out, "# permutation: {}", join(sf.permutation().iter().map(|c| c + 1)));
    out
}

fn cmd_pbasis(m: &Submodule, as_json: bool) -> String {
    let basis = m.p_basis();
    if as_json {
        return to_json(&json!({
            "command": "pbasis",
            "p_basis": rows_json(basis.vectors()),
            "p_dim": basis.pdim(),
        }));
    }
    format!(
        "# p-basis\n{}# p-dim: {}\n",
        render_module(m.ring(), m.n(), basis.vectors()),
        basis.pdim()
    )
}

fn cmd_module(command: &str, title: &str, m: &Submodule, as_json: bool) -> String {
    if as_json {
        return to_json(&json!({ "command": command, "module": module_json(m) }));
    }
    module_report(title, m)
}

fn parse_vector_literal(ring: RingParams, n: usize, parts: &[String]) -> Result<Vector, Failure> {
    let coords = parts
        .iter()
        .flat_map(|p| p.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| Failure::Malformed(format!("bad vector entry `{s}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != n {
        return Err(Failure::Malformed(format!(
            "vector has {} entries, module has length {n}",
            coords.len()
        )));
    }
    Ok(Vector::new(ring, &coords))
}

fn cmd_member(m: &Submodule, v: &Vector, as_json: bool) -> String {
    let basis = m.p_basis();
    let digits = basis.p_coordinates(v).expect("vector was parsed against the module");
    if as_json {
        return to_json(&json!({
            "command": "member",
            "vector": v.coords(),
            "member": digits.is_some(),
            "digits": digits.as_ref().map(|d| d.iter().map(|x| x.value()).collect::<Vec<_>>()),
            "p_basis": rows_json(basis.vectors()),
        }));
    }
    let mut out = match &digits {
        Some(d) => format!("member: {}\n", join(d)),
        None => "not a member\n".to_string(),
    };
    out.push_str("# p-basis:\n");
    for b in basis.vectors() {
        let _ = writeln!(out, "#   {b}");
    }
    out
}

fn cmd_extend(sub_file: &ModuleFile, m: &Submodule, as_json: bool) -> Result<String, Failure> {
    let n_module = sub_file.submodule();
    let (start, source) = match PBasis::new(sub_file.ring, sub_file.n, sub_file.rows.clone()) {
        Ok(b) => (b, "given rows"),
        Err(_) => (n_module.p_basis(), "chain basis of the first module"),
    };
    let ext = extend_p_basis(&start, m).map_err(|e| Failure::Precondition(e.to_string()))?;
    let added = ext.pdim() - start.pdim();
    if as_json {
        return Ok(to_json(&json!({
            "command": "extend",
            "start": rows_json(start.vectors()),
            "start_source": source,
            "p_basis": rows_json(ext.vectors()),
            "p_dim": ext.pdim(),
            "added": added,
        })));
    }
    Ok(format!(
        "# p-basis extending the {source}\n{}# p-dim: {}\n# added: {added}\n",
        render_module(m.ring(), m.n(), ext.vectors()),
        ext.pdim()
    ))
}

fn cmd_verify(m: &Submodule, as_json: bool) -> (String, bool) {
    let rep = verify_dimension_identities(m);
    let ok = rep.all_hold();
    if as_json {
        return (
            to_json(&json!({ "command": "verify", "module": module_json(m), "report": rep, "ok": ok })),
            ok,
        );
    }
    let mark = |b: bool| if b { "ok" } else { "FAILED" };
    let d = m.dual();
    let (n, r) = (rep.n, rep.r as usize);
    let mut out = module_report("module under test", m);
    let _ = writeln!(
        out,
        "# p-dim(M) + p-dim(M^perp) = {} + {} = {} (r*n = {}): {}",
        rep.p_dim,
        rep.dual_p_dim,
        rep.p_dim + rep.dual_p_dim,
        r * n,
        mark(rep.dimension_sum_holds)
    );
    let _ = writeln!(
        out,
        "# |M| * |M^perp| = {} * {} = p^{}: {}",
        cardinality_text(m),
        cardinality_text(&d),
        r * n,
        mark(rep.cardinality_product_holds)
    );
    let _ = writeln!(out, "# k(M^perp) = {}, k_0(M^perp) = {}, k_i(M^perp) = {}: {}",
        rep.dual_k_total,
        rep.dual_k[0],
        join(&rep.dual_k[1..]),
        mark(rep.dual_parameters_hold)
    );
    let _ = writeln!(out, "# dual(dual(M)) = M: {}", mark(rep.double_dual_holds));
    let _ = writeln!(out, "# verdict: {}", if ok { "all identities hold" } else { "FAILED" });
    (out, ok)
}

fn cmd_enumerate(file: &ModuleFile, guard: &EnumerationGuard, as_json: bool) -> Result<String, Failure> {
    let m = file.submodule();
    let elements = enumerate_span(&m.generator_set(), guard).map_err(|e| match e {
        Error::TooLarge { .. } => Failure::Guard(e.to_string()),
        other => Failure::Precondition(other.to_string()),
    })?;
    let elements: Vec<Vector> = elements.into_iter().collect();
    if as_json {
        return Ok(to_json(&json!({
            "command": "enumerate",
            "p": file.ring.p(),
            "r": file.ring.r(),
            "n": file.n,
            "elements": rows_json(&elements),
            "count": elements.len(),
        })));
    }
    Ok(format!(
        "# elements\n{}# elements: {}\n",
        render_module(file.ring, file.n, &elements),
        elements.len()
    ))
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    let as_json = cli.json;
    let result: Result<(String, i32), Failure> = (|| {
        let ok = |s: String| Ok((s, EXIT_OK));
        match &cli.command {
            Command::StandardForm { file } => ok(cmd_standard_form(&load(file)?.submodule(), as_json)),
            Command::Pbasis { file } => ok(cmd_pbasis(&load(file)?.submodule(), as_json)),
            Command::Dual { file } => ok(cmd_module("dual", "dual module", &dual(&load(file)?.submodule()), as_json)),
            Command::Socle { file } => ok(cmd_module("socle", "socle", &socle(&load(file)?.submodule()), as_json)),
            Command::Member { file, vector } => {
                let f = load(file)?;
                let v = parse_vector_literal(f.ring, f.n, vector)?;
                ok(cmd_member(&f.submodule(), &v, as_json))
            }
            Command::Sum { a, b } => {
                let (ma, mb) = load_pair(a, b)?;
                ok(cmd_module("sum", "sum", &sum(&ma, &mb).expect("same ambient space"), as_json))
            }
            Command::Intersect { a, b } => {
                let (ma, mb) = load_pair(a, b)?;
                let m = intersect(&ma, &mb).expect("same ambient space");
                ok(cmd_module("intersect", "intersection", &m, as_json))
            }
            Command::Extend { sub, module } => {
                let (fs, fm) = (load(sub)?, load(module)?);
                if fs.ring != fm.ring || fs.n != fm.n {
                    return Err(Failure::Malformed("modules live in different ambient spaces".into()));
                }
                ok(cmd_extend(&fs, &fm.submodule(), as_json)?)
            }
            Command::Verify { file } => {
                let (out, holds) = cmd_verify(&load(file)?.submodule(), as_json);
                Ok((out, if holds { EXIT_OK } else { EXIT_VERIFY_FAILED }))
            }
            Command::Enumerate { file } => {
                let guard = EnumerationGuard::new(cli.max_states);
                ok(cmd_enumerate(&load(file)?, &guard, as_json)?)
            }
        }
    })();
    match result {
        Ok((stdout, code)) => Outcome {
            stdout,
            stderr: String::new(),
            code,
        },
        Err(failure) => {
            let stdout = if as_json {
                to_json(&json!({ "error": failure.message(), "exit_code": failure.code() }))
            } else {
                String::new()
            };
            Outcome {
                stdout,
                stderr: format!("error: {}\n", failure.message()),
                code: failure.code(),
            }
        }
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_MALFORMED,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    const WORKED: &str = "# worked example\n2 3 3\n2 0 1\n0 4 0\n";

    #[test]
    fn parses_worked_example_file() {
        let f = ModuleFile::parse(WORKED).unwrap();
        assert_eq!(f.ring, make_ring(2, 3).unwrap());
        assert_eq!(f.n, 3);
        assert_eq!(f.rows.len(), 2);
        assert_eq!(f.submodule().cardinality(), Some(16));
    }

    #[test]
    fn canonicalizes_entries_and_tolerates_layout() {
        let f = ModuleFile::parse("\n  3 2 2  \r\n# c\n\n10 -1\n0 9").unwrap();
        assert_eq!(f.rows[0].coords(), &[1, 8]);
        assert_eq!(f.rows[1].coords(), &[0, 0]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("", None, "missing"),
            ("2 3\n", Some(1), "header"),
            ("4 2 2\n", Some(1), "not prime"),
            ("2 0 2\n", Some(1), "exponent"),
            ("2 3 0\n", Some(1), "at least 1"),
            ("2 3 2\n1 2\n1 2 3\n", Some(3), "expected 2"),
            ("# c\n2 3 2\n1 x\n", Some(3), "bad entry"),
        ];
        for (text, line, fragment) in cases {
            let err = ModuleFile::parse(text).unwrap_err();
            assert_eq!(err.line, line, "{text:?}");
            assert!(err.to_string().contains(fragment), "{err} lacks {fragment}");
        }
    }

    #[test]
    fn render_round_trips() {
        let f = ModuleFile::parse(WORKED).unwrap();
        let text = render_module(f.ring, f.n, &f.rows);
        assert_eq!(text, "2 3 3\n2 0 1\n0 4 0\n");
        assert_eq!(ModuleFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn vector_literals() {
        let z8 = make_ring(2, 3).unwrap();
        let v = parse_vector_literal(z8, 3, &["4 4 6".into()]).ok().unwrap();
        assert_eq!(v.coords(), &[4, 4, 6]);
        let v = parse_vector_literal(z8, 3, &["4".into(), "-4".into(), "14".into()]).ok().unwrap();
        assert_eq!(v.coords(), &[4, 4, 6]);
        assert!(parse_vector_literal(z8, 3, &["4 4".into()]).is_err());
        assert!(parse_vector_literal(z8, 3, &["4 4 a".into()]).is_err());
    }

    #[test]
    fn bad_arguments_exit_malformed() {
        let out = run(["zpr", "no-such-command"]);
        assert_eq!(out.code, EXIT_MALFORMED);
        let out = run(["zpr", "--help"]);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("standard-form"));
    }
}
