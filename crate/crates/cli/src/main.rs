//! `quartic`: command-line front end.
//!
//! Object arguments are references such as `F4`, `F5.O_Lm1`, `G(1)`, or names defined
//! in a session file passed with `--session` (or as the first argument). Without an
//! object argument the session's last module is used.
//!
//! Exit codes: 0 success, 1 a claim failed, 2 input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use quartic_core::cohomology::{beilinson_table, cohomology_table, dual_sheaf, sheaf_ext};
use quartic_core::field::{F101, F2p31, F32003};
use quartic_core::groebner::Gb;
use quartic_core::hilbert::{hilbert_function, hilbert_polynomial};
use quartic_core::homology::{ext_module, tor_module, Window};
use quartic_core::ops::ideal_gb;
use quartic_core::scenarios::{builtin_claims, parse_claims, run_claims_in, RunOptions, DEFAULT_WINDOW};
use quartic_core::session::{Env, Session};
use quartic_core::walls::{default_chi_range, wall_candidates, CurveChiTable};
use quartic_core::{Field, FreeResolution, MonOrder, Q};

const SUBCOMMANDS: &[&str] =
    &["gb", "res", "hilb", "cohom", "ext", "sheafext", "tor", "dual", "beilinson", "walls", "verify", "run", "help"];

#[derive(Parser, Debug)]
#[command(name = "quartic", version, about = "Sheaves on projective space: resolutions, Ext, cohomology, walls")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// session file with a ring and named objects
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    /// degree window `a..b`
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<Window>,
    /// monomial order for `gb`
    #[arg(long, global = true, default_value = "grevlex", value_parser = parse_order)]
    order: MonOrder,
    /// coefficient field: QQ or Fp:<p> with p in 101, 32003, 2147483647
    /// (default: the session ring's tag, else QQ)
    #[arg(long, global = true)]
    field: Option<String>,
    /// print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Cmd {
    /// reduced Gröbner basis of an ideal or of a module's relations
    Gb { obj: Option<String> },
    /// minimal free resolution and Betti table
    Res { obj: Option<String> },
    /// Hilbert polynomial (and Hilbert function on --window)
    Hilb { obj: Option<String> },
    /// sheaf cohomology table on --window
    Cohom { obj: Option<String> },
    /// graded dimensions of Ext^i_S(M, N) on --window
    Ext { m: String, n: String, i: usize },
    /// dimension of the sheaf Ext^i(M~, N~)
    Sheafext { m: String, n: String, i: usize },
    /// graded dimensions of Tor_i^S(M, N) on --window
    Tor { m: String, n: String, i: usize },
    /// dual sheaf Ext^{n-1}(F, ω) of a one-dimensional sheaf
    Dual { obj: Option<String> },
    /// Beilinson table and resolution type of a 4m+1 sheaf
    Beilinson { obj: Option<String> },
    /// numerical walls for pairs with Hilbert polynomial d*m + chi
    Walls {
        #[arg(allow_negative_numbers = true)]
        d: i64,
        #[arg(allow_negative_numbers = true)]
        chi: i64,
        /// chi range `a..b` for the section-free piece
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: Option<(i64, i64)>,
        /// also list inadmissible candidates
        #[arg(long)]
        all: bool,
    },
    /// run the built-in claim catalog or a claims file
    Verify {
        #[arg(long = "paper", conflicts_with = "claims")]
        builtin: bool,
        claims: Option<PathBuf>,
        /// widen every claim window by this many degrees on both sides
        #[arg(long, default_value_t = 0)]
        widen: i32,
    },
    /// execute the `cmd` lines of the session file
    Run,
}

fn parse_window(s: &str) -> Result<Window, String> {
    let (a, b) = parse_range(s)?;
    Ok(Window::new(a as i32, b as i32))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or("expected a..b")?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad bound '{a}'"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad bound '{b}'"))?;
    if a > b {
        return Err("empty range".into());
    }
    Ok((a, b))
}

fn parse_order(s: &str) -> Result<MonOrder, String> {
    match s {
        "grevlex" => Ok(MonOrder::GrevLex),
        "lex" => Ok(MonOrder::Lex),
        _ => Err(format!("unknown order '{s}' (grevlex or lex)")),
    }
}

/// Result of one command: text for humans, JSON for machines, and whether claims passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn load_session<K: Field>(opts: &GlobalOpts) -> Result<Option<Session<K>>> {
    let Some(path) = &opts.session else { return Ok(None) };
    let text = fs::read_to_string(path).with_context(|| path.display().to_string())?;
    let s = Session::<K>::parse(&text).with_context(|| path.display().to_string())?;
    Ok(Some(s))
}

/// Field tag written in the session's `ring` line, if any.
fn session_field(opts: &GlobalOpts) -> Option<String> {
    let text = fs::read_to_string(opts.session.as_ref()?).ok()?;
    let line = text.lines().map(str::trim).find(|l| l.starts_with("ring"))?;
    let spec = line["ring".len()..].trim();
    let tag = spec[..spec.find('[')?].trim();
    (!tag.is_empty()).then(|| tag.to_string())
}

fn dispatch<K: Field>(cmd: &Cmd, opts: &GlobalOpts, env: &Env<K>) -> Result<Output> {
    let window = opts.window.unwrap_or(DEFAULT_WINDOW);
    match cmd {
        Cmd::Gb { obj } => {
            let reference = obj.clone().or_else(|| env.session.as_ref().and_then(|s| s.last_module().map(String::from)));
            if let Some(r) = &reference {
                if let Ok((ring, gens)) = env.ideal(r) {
                    let gb = ideal_gb(&gens, opts.order);
                    let polys: Vec<String> = gb.iter().map(|p| p.format(&ring.names)).collect();
                    return Ok(Output::new(polys.join("\n"), json!({ "order": opts.order.name(), "basis": polys })));
                }
            }
            let m = env.module_or_last(reference.as_deref())?;
            let gb = Gb::of_columns(&m.rels, opts.order).to_matrix();
            let cols: Vec<String> =
                (0..gb.ncols()).map(|j| gb.select_columns(&[j]).format(&m.ring.names)).collect();
            Ok(Output::new(cols.join("\n"), json!({ "order": opts.order.name(), "basis": cols })))
        }
        Cmd::Res { obj } => {
            let m = env.module_or_last(obj.as_deref())?;
            let res = FreeResolution::minimal(&m, m.nvars() + 1);
            let b = res.betti();
            let shape = b.shape();
            let text = format!("{b}\n{}", shape.join(" <- "));
            let maps: Vec<String> = res.maps.iter().map(|a| a.format(&m.ring.names)).collect();
            Ok(Output::new(text, json!({ "shape": shape, "regularity": b.regularity(), "maps": maps })))
        }
        Cmd::Hilb { obj } => {
            let m = env.module_or_last(obj.as_deref())?;
            let hp = hilbert_polynomial(&m).to_string();
            let mut text = hp.clone();
            let mut j = json!({ "hilbert_polynomial": hp });
            if let Some(w) = opts.window {
                let hf: Vec<usize> = w.degrees().map(|d| hilbert_function(&m, d)).collect();
                text.push_str(&format!("\nHF on {}..{}: {hf:?}", w.lo, w.hi));
                j["hilbert_function"] = json!({ "window": w, "dims": hf });
            }
            Ok(Output::new(text, j))
        }
        Cmd::Cohom { obj } => {
            let m = env.module_or_last(obj.as_deref())?;
            let t = cohomology_table(&m, window);
            Ok(Output::new(t.to_string(), serde_json::to_value(&t)?))
        }
        Cmd::Ext { m, n, i } | Cmd::Tor { m, n, i } => {
            let (a, b) = (env.module(m)?, env.module(n)?);
            let tor = matches!(cmd, Cmd::Tor { .. });
            let d = if tor { tor_module(&a, &b, *i, window)? } else { ext_module(&a, &b, *i, window)? };
            let name = if tor { "Tor" } else { "Ext" };
            let text = format!("{name}^{i} on {}..{}: {:?}", window.lo, window.hi, d.dims);
            Ok(Output::new(text, serde_json::to_value(&d)?))
        }
        Cmd::Sheafext { m, n, i } => {
            let r = sheaf_ext(&env.module(m)?, &env.module(n)?, *i)?;
            let text = format!("{}", r.dim);
            Ok(Output::new(text, json!({ "dim": r.dim, "e": r.e, "history": r.history })))
        }
        Cmd::Dual { obj } => {
            let m = env.module_or_last(obj.as_deref())?;
            let d = dual_sheaf(&m)?;
            let hp = hilbert_polynomial(&d).to_string();
            let text = format!("{hp}\ngenerators in degrees {:?}\n{}", d.gens(), d.rels.format(&d.ring.names));
            Ok(Output::new(text, json!({ "hilbert_polynomial": hp, "gens": d.gens(), "relations": d.rels.format(&d.ring.names) })))
        }
        Cmd::Beilinson { obj } => {
            let m = env.module_or_last(obj.as_deref())?;
            let s = beilinson_table(&m)?;
            let (a, b, c) = s.triple();
            let text = format!(
                "h0(F⊗Ω²(2))={a} h0(F⊗Ω¹(1))={b} h0(F)={c}\nh0(F(-1))={} h1(F)={}\ntype {}",
                s.h0_minus1, s.h1, s.kind
            );
            Ok(Output::new(text, serde_json::to_value(&s)?))
        }
        Cmd::Walls { d, chi, range, all } => {
            let range = range.unwrap_or_else(|| default_chi_range(*d, *chi));
            let ws: Vec<_> = wall_candidates(*d, *chi, range, &CurveChiTable::default())?
                .into_iter()
                .filter(|w| *all || w.admissible)
                .collect();
            let mut text: Vec<String> = ws
                .iter()
                .map(|w| if *all { format!("{w} [{}] {}", if w.admissible { "admissible" } else { "excluded" }, w.reason) } else { w.to_string() })
                .collect();
            if text.is_empty() {
                text.push(format!("no walls for ({d}, {chi})"));
            }
            Ok(Output::new(text.join("\n"), serde_json::to_value(&ws)?))
        }
        Cmd::Verify { builtin, claims, widen } => {
            let list = match (builtin, claims) {
                (_, Some(path)) => {
                    let text = fs::read_to_string(path).with_context(|| path.display().to_string())?;
                    parse_claims(&text).with_context(|| path.display().to_string())?
                }
                (true, None) => builtin_claims(),
                (false, None) => bail!("verify needs --paper or a claims file"),
            };
            let report = run_claims_in(env, &list, RunOptions { widen: *widen });
            let ok = report.all_passed();
            Ok(Output { text: report.text(), json: serde_json::to_value(&report)?, ok })
        }
        Cmd::Run => {
            let s = env.session.as_ref().ok_or_else(|| anyhow!("run needs a session file"))?;
            let mut texts = Vec::new();
            let mut jsons = Vec::new();
            let mut ok = true;
            for c in &s.commands {
                let argv = std::iter::once("quartic".to_string()).chain(c.args.iter().cloned());
                let parsed = Cli::try_parse_from(argv)
                    .map_err(|e| anyhow!("line {}: {}", c.loc.line, e.to_string().lines().next().unwrap_or("")))?;
                if matches!(parsed.command, Cmd::Run) {
                    bail!("line {}: nested run", c.loc.line);
                }
                let mut o = opts.clone();
                o.window = parsed.opts.window.or(opts.window);
                if parsed.opts.order != MonOrder::GrevLex {
                    o.order = parsed.opts.order;
                }
                let out = dispatch(&parsed.command, &o, env).with_context(|| format!("line {}", c.loc.line))?;
                ok &= out.ok;
                texts.push(format!("> {}\n{}", c.args.join(" "), out.text));
                jsons.push(json!({ "command": c.args.join(" "), "result": out.json }));
            }
            Ok(Output { text: texts.join("\n"), json: Value::Array(jsons), ok })
        }
    }
}

fn execute<K: Field>(cli: &Cli) -> Result<Output> {
    let env = Env::new(load_session::<K>(&cli.opts)?);
    dispatch(&cli.command, &cli.opts, &env)
}

/// Lets `quartic file.qs hilb` stand for `quartic --session file.qs hilb`.
fn normalize_args(mut argv: Vec<String>) -> Vec<String> {
    if argv.len() > 1 && !argv[1].starts_with('-') && !SUBCOMMANDS.contains(&argv[1].as_str()) {
        let path = argv.remove(1);
        argv.splice(1..1, ["--session".to_string(), path]);
        if argv.len() == 3 {
            argv.push("run".into());
        }
    }
    argv
}

fn main() -> ExitCode {
    let argv = normalize_args(std::env::args().collect());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let field = cli.opts.field.clone().or_else(|| session_field(&cli.opts)).unwrap_or_else(|| "QQ".into());
    let result = match field.as_str() {
        "QQ" => execute::<Q>(&cli),
        "Fp:101" => execute::<F101>(&cli),
        "Fp:32003" => execute::<F32003>(&cli),
        "Fp:2147483647" => execute::<F2p31>(&cli),
        other => Err(anyhow!("unsupported field '{other}' (QQ, Fp:101, Fp:32003, Fp:2147483647)")),
    };
    match result {
        Ok(out) => {
            let body = if cli.opts.json { serde_json::to_string_pretty(&out.json).unwrap_or_default() } else { out.text };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{body}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
