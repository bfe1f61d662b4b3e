use serde_json::{json, Value};
use swclass::charclass::{
    ahat_class, chern_character, equivariant_euler, equivariant_todd, mu_to_sw, segre, sw_to_mu, todd_class,
    ComplexBundleClass, RealBundleClass,
};
use swclass::exec::Exec;
use swclass::gring::json::{element_value, ring_from_str};
use swclass::gring::{fmt_rational, CoeffRing, Element, Ring};
use swclass::kdiv::{
    a_coeffs, ch_swk, divisibility_ledger, divisibility_ledger_sphere, n_dmp_closed, n_dmp_residue,
    verify_sym_pushforward,
};
use swclass::steenrod::{
    power_of_two_relations, realizability_relations, sq, sw_equals_chern_check, verify_recur3, verify_recur5,
    verify_vzero, w2_obstruction, LedgerJson, SWLedger, VerificationRange, VerificationReport,
};
use swclass::wallcross::{
    obs_from_algebra, parity_check, unparam_wall_crossing, wall_difference, SphereContext, TorusWallInput,
};

use crate::report::{bad, CliError, Report};
use crate::{scenario, BundleArgs, ClassesCmd, Cli, Cmd, CmdResult, KdivCmd, RingCmd, SwCmd, VerifyCmd, WallCmd};

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.cmd {
        Cmd::Ring(RingCmd::Eval { expr }) => {
            let ring = ring(cli)?;
            Ok(Report::new(element_value(&ring.parse(expr).map_err(bad)?)))
        }
        Cmd::Classes(c) => classes(cli, c),
        Cmd::Sw(c) => sw(cli, c),
        Cmd::Wall(c) => wall(cli, c),
        Cmd::Kdiv(c) => kdiv(cli, c),
        Cmd::Verify(c) => verify(cli, c),
        Cmd::Scenario { name, params } => scenario::run(cli, *name, params.as_deref()),
    }
}

/// A file path, or inline JSON when the argument starts with `{`.
pub fn read_source(src: &str) -> Result<String, CliError> {
    if src.trim_start().starts_with('{') {
        Ok(src.to_string())
    } else {
        std::fs::read_to_string(src).map_err(|e| CliError::BadInput(format!("{src}: {e}")))
    }
}

pub fn ring(cli: &Cli) -> Result<Ring, CliError> {
    let src = cli.ring.as_deref().ok_or_else(|| CliError::BadInput("--ring is required".into()))?;
    let r = ring_from_str(&read_source(src)?).map_err(bad)?;
    match cli.trunc {
        Some(t) => r.with_trunc(t).map_err(bad),
        None => Ok(r),
    }
}

pub fn exec(cli: &Cli) -> Exec {
    if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn ledger(cli: &Cli, src: &str) -> Result<SWLedger, CliError> {
    let mut j: LedgerJson = serde_json::from_str(&read_source(src)?).map_err(bad)?;
    if let Some(t) = cli.trunc {
        j.ring.trunc = t;
    }
    j.into_ledger().map_err(bad)
}

fn parse_all(ring: &Ring, exprs: &[String]) -> Result<Vec<Element>, CliError> {
    exprs.iter().map(|e| ring.parse(e).map_err(bad)).collect()
}

fn texts(xs: &[Element]) -> Value {
    json!(xs.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn bundle(ring: &Ring, b: &BundleArgs) -> Result<ComplexBundleClass, CliError> {
    ComplexBundleClass::new(ring, b.rank, parse_all(ring, &b.chern)?).map_err(bad)
}

fn classes(cli: &Cli, c: &ClassesCmd) -> CmdResult {
    let ring = ring(cli)?;
    let v = match c {
        ClassesCmd::Segre(b) => json!({ "segre": texts(&segre(&bundle(&ring, b)?).map_err(bad)?) }),
        ClassesCmd::Euler { bundle: b, a } => {
            let v = bundle(&ring, b)?;
            let e = equivariant_euler(a.unwrap_or(v.rank), &v).map_err(bad)?;
            json!({ "euler": e.to_string(), "coefficients": texts(&e.coeffs) })
        }
        ClassesCmd::ChernChar(b) => json!({ "ch": chern_character(&bundle(&ring, b)?).map_err(bad)?.to_string() }),
        ClassesCmd::Todd(b) => json!({ "todd": todd_class(&bundle(&ring, b)?).map_err(bad)?.to_string() }),
        ClassesCmd::Ahat { rank, pontryagin } => {
            let w = RealBundleClass::new(*rank, Vec::new(), parse_all(&ring, pontryagin)?, None).map_err(bad)?;
            json!({ "ahat": ahat_class(&ring, &w).map_err(bad)?.to_string() })
        }
    };
    Ok(Report::new(v))
}

fn sw(cli: &Cli, c: &SwCmd) -> CmdResult {
    match c {
        SwCmd::Steenrod { ledger: src, i, m } => {
            let l = ledger(cli, src)?;
            let v = sq(&l, *i, *m).map_err(bad)?;
            Ok(Report::new(json!({ "i": i, "m": m, "sq": v.to_string() })))
        }
        SwCmd::Relations { ledger: src, power_of_two, sw_parity, chern_check } => {
            let l = ledger(cli, src)?;
            let mut rels = realizability_relations(&l).map_err(bad)?;
            if let Some(spec) = power_of_two {
                let (a, pp) = spec
                    .split_once(':')
                    .and_then(|(a, p)| Some((a.trim().parse::<u32>().ok()?, p.trim().parse::<i64>().ok()?)))
                    .ok_or_else(|| CliError::BadInput(format!("expected A:P', got {spec:?}")))?;
                rels.extend(power_of_two_relations(&l, a, pp).map_err(bad)?);
            }
            let mut ok = rels.iter().all(|r| r.holds());
            let mut v = json!({
                "relations": rels.iter().map(|r| json!({
                    "relation": r.description,
                    "value": r.value.to_string(),
                    "holds": r.holds(),
                })).collect::<Vec<_>>(),
            });
            if let Some(p) = sw_parity {
                let w = w2_obstruction(&l, *p == 1).map_err(bad)?;
                ok &= !w.obstructed;
                v["w2"] = json!({ "c1_plus_w2": w.class.to_string(), "obstructed": w.obstructed });
            }
            if *chern_check {
                let c = sw_equals_chern_check(&l).map_err(bad)?;
                ok &= c.pass();
                v["chern_check"] = json!({ "product": c.product.to_string(), "first_failure": c.first_failure });
            }
            v["all_hold"] = json!(ok);
            Ok(Report::checked(v, ok))
        }
        SwCmd::MuConvert { mu, segre, sw, chern } => {
            let ring = ring(cli)?;
            match (mu.is_empty(), sw.is_empty()) {
                (false, true) => {
                    let out = mu_to_sw(&parse_all(&ring, mu)?, &with_one(&ring, parse_all(&ring, segre)?)).map_err(bad)?;
                    Ok(Report::new(json!({ "sw": texts(&out) })))
                }
                (true, false) => {
                    let out = sw_to_mu(&parse_all(&ring, sw)?, &with_one(&ring, parse_all(&ring, chern)?)).map_err(bad)?;
                    Ok(Report::new(json!({ "mu": texts(&out) })))
                }
                _ => Err(CliError::BadInput("give exactly one of --mu and --sw".into())),
            }
        }
    }
}

/// Prepends `1` unless the list already starts with it.
fn with_one(ring: &Ring, mut xs: Vec<Element>) -> Vec<Element> {
    if xs.first() != Some(&ring.one()) {
        xs.insert(0, ring.one());
    }
    xs
}

fn wall(cli: &Cli, c: &WallCmd) -> CmdResult {
    match c {
        WallCmd::Diff { m, d, obs, segre } => {
            let ring = ring(cli)?;
            let obs = ring.parse(obs).map_err(bad)?;
            let v = wall_difference(*m, *d, &obs, &parse_all(&ring, segre)?).map_err(bad)?;
            Ok(Report::new(json!({ "m": m, "d": d, "difference": v.to_string() })))
        }
        WallCmd::Obs { b_plus, e_phi, e_psi, lambda } => match (e_phi, e_psi, lambda) {
            (None, None, None) => {
                let ctx = SphereContext::symbolic(*b_plus).map_err(bad)?;
                let obs = obs_from_algebra(&ctx).map_err(bad)?;
                Ok(Report::new(json!({ "b_plus": b_plus, "obs": obs.to_string() })))
            }
            (Some(a), Some(b), Some(l)) => {
                let ring = ring(cli)?;
                let p = |s: &str| ring.parse(s).map_err(bad);
                let ctx = SphereContext::new(*b_plus, p(a)?, p(b)?, p(l)?).map_err(bad)?;
                let rep = parity_check(&ctx).map_err(bad)?;
                let checks: Vec<Value> = rep.checks.iter().map(|(k, ok)| json!({ "check": k, "pass": ok })).collect();
                let v = json!({ "b_plus": b_plus, "obs": rep.obs.to_string(), "checks": checks, "pass": rep.pass() });
                Ok(Report::checked(v, rep.pass()))
            }
            _ => Err(CliError::BadInput("give all of --e-phi, --e-psi, --lambda or none".into())),
        },
        WallCmd::Torus { input, b1, d, matrix } => {
            let inp = torus_input(input.as_deref(), *b1, *d, matrix.as_deref())?;
            let r = unparam_wall_crossing(&inp).map_err(bad)?;
            Ok(Report::new(json!({
                "b1": inp.b1,
                "d": inp.d,
                "alpha": r.alpha.to_string(),
                "ch": r.ch.to_string(),
                "jump": fmt_rational(&r.jump),
            })))
        }
    }
}

pub fn torus_input(input: Option<&str>, b1: Option<i64>, d: i64, matrix: Option<&str>) -> Result<TorusWallInput, CliError> {
    if let Some(src) = input {
        return serde_json::from_str(&read_source(src)?).map_err(bad);
    }
    let (Some(b1), Some(m)) = (b1, matrix) else {
        return Err(CliError::BadInput("give --input, or --b1 and --matrix".into()));
    };
    let m: Vec<Vec<i64>> = serde_json::from_str(m).map_err(bad)?;
    Ok(TorusWallInput { b1, d, m })
}

fn kdiv(cli: &Cli, c: &KdivCmd) -> CmdResult {
    match c {
        KdivCmd::Coeffs { p, count } => {
            let a = a_coeffs(*p, *count).map_err(bad)?;
            let xs: Vec<String> = (0..*count as i64).map(|l| fmt_rational(&a.coeff(p + l))).collect();
            Ok(Report::new(json!({ "p": p, "a": xs })))
        }
        KdivCmd::Ndmp { d, m, p } => {
            let closed = n_dmp_closed(*d, *m, *p).map_err(bad)?;
            let residue = n_dmp_residue(*d, *m, *p).map_err(bad)?;
            let agree = closed == residue;
            let v = json!({
                "d": d, "m": m, "p": p,
                "closed": fmt_rational(&closed),
                "residue": fmt_rational(&residue),
                "agree": agree,
            });
            Ok(Report::checked(v, agree))
        }
        KdivCmd::Ledger { d, p, r } => {
            let l = match r {
                Some(r) => divisibility_ledger_sphere(*r, *d, *p),
                None => divisibility_ledger(*d, *p),
            }
            .map_err(bad)?;
            Ok(Report::checked(l.to_json(), l.certificate_holds()))
        }
        KdivCmd::Swk { ledger: src, m, kappa, ahat } => {
            let l = ledger(cli, src)?;
            let ring = l.ring().clone();
            let d_bundle = ComplexBundleClass::from_segre(&ring, l.d, &l.segre_d).map_err(bad)?;
            let nmax = l.sw.keys().copied().max().unwrap_or(0).max(0) as usize;
            let td = equivariant_todd(&d_bundle, nmax).map_err(bad)?;
            let kappa = ring.parse(kappa).map_err(bad)?;
            let ahat = ring.parse(ahat).map_err(bad)?;
            let ch = ch_swk(&l, &kappa, &ahat, &td, *m).map_err(bad)?;
            Ok(Report::new(json!({ "m": m, "ch_swk": ch.to_string() })))
        }
    }
}

fn sweep_value(rep: &VerificationReport) -> Value {
    let bad_rows: Vec<Value> = rep
        .counterexamples()
        .iter()
        .map(|r| {
            let mut row = serde_json::Map::new();
            for (k, v) in &r.params {
                row.insert((*k).to_string(), json!(v));
            }
            row.insert("lhs".into(), json!(u8::from(r.lhs)));
            row.insert("rhs".into(), json!(u8::from(r.rhs)));
            Value::Object(row)
        })
        .collect();
    json!({
        "identity": rep.identity,
        "checked": rep.checked(),
        "counterexamples": bad_rows,
        "all_pass": rep.all_pass(),
    })
}

/// Default range for `identity` with every applicable `--range` override;
/// with `strict`, an override naming an unknown key is an error.
pub fn sweep_range(cli: &Cli, identity: &str, strict: bool) -> Result<VerificationRange, CliError> {
    let mut r = match identity {
        "vzero" => VerificationRange::vzero_default(),
        "recur5" => VerificationRange::recur5_default(),
        _ => VerificationRange::recur3_default(),
    };
    for spec in &cli.range {
        let key = spec.split_once('=').map(|(k, _)| k.trim()).unwrap_or(spec);
        if r.get(key).is_err() {
            if strict {
                return Err(CliError::BadInput(format!("{identity} has no parameter {key:?}")));
            }
            continue;
        }
        r.apply(spec).map_err(bad)?;
    }
    Ok(r)
}

pub fn run_sweep(cli: &Cli, identity: &str, strict: bool) -> Result<VerificationReport, CliError> {
    let r = sweep_range(cli, identity, strict)?;
    let ex = exec(cli);
    match identity {
        "vzero" => verify_vzero(&r, ex),
        "recur5" => verify_recur5(&r, ex),
        _ => verify_recur3(&r, ex),
    }
    .map_err(bad)
}

fn free_chern_ring(rank: i64, trunc: u32) -> Result<Ring, CliError> {
    let names: Vec<String> = (1..=rank).map(|j| format!("c{j}")).collect();
    let gens: Vec<(&str, u32)> = names.iter().enumerate().map(|(j, n)| (n.as_str(), 2 * (j as u32 + 1))).collect();
    Ring::free(CoeffRing::Rationals, &gens, trunc).map_err(bad)
}

fn sym_push_value(v: &ComplexBundleClass, aprime: i64, m: i64) -> Result<(Value, bool), CliError> {
    let rep = verify_sym_pushforward(v, aprime, m).map_err(bad)?;
    let ok = rep.pass();
    let val = json!({
        "a": v.rank,
        "aprime": aprime,
        "m": m,
        "lhs": rep.lhs.to_string(),
        "rhs": rep.rhs.to_string(),
        "mismatched_degrees": rep.mismatched_degrees,
        "pass": ok,
    });
    Ok((val, ok))
}

fn verify(cli: &Cli, c: &VerifyCmd) -> CmdResult {
    match c {
        VerifyCmd::Vzero | VerifyCmd::Recur5 | VerifyCmd::Recur3 => {
            let id = match c {
                VerifyCmd::Vzero => "vzero",
                VerifyCmd::Recur5 => "recur5",
                _ => "recur3",
            };
            let rep = run_sweep(cli, id, true)?;
            Ok(Report::checked(sweep_value(&rep), rep.all_pass()).with_tsv(rep.to_tsv()))
        }
        VerifyCmd::SymPush { rank, chern, aprime, m } => {
            let (ring, chern) = match &cli.ring {
                Some(_) => (ring(cli)?, chern.clone()),
                None => {
                    let r = free_chern_ring(*rank, cli.trunc.unwrap_or(6))?;
                    let gens = if chern.is_empty() { (1..=*rank).map(|j| format!("c{j}")).collect() } else { chern.clone() };
                    (r, gens)
                }
            };
            let v = ComplexBundleClass::new(&ring, *rank, parse_all(&ring, &chern)?).map_err(bad)?;
            let (val, ok) = sym_push_value(&v, *aprime, *m)?;
            Ok(Report::checked(val, ok))
        }
        VerifyCmd::All => {
            let mut ok = true;
            let mut tsv = String::new();
            let mut sweeps = Vec::new();
            for id in ["vzero", "recur5", "recur3"] {
                let rep = run_sweep(cli, id, false)?;
                ok &= rep.all_pass();
                tsv.push_str(&rep.to_tsv());
                sweeps.push(sweep_value(&rep));
            }
            let trunc = cli.trunc.unwrap_or(6);
            let mut sym = Vec::new();
            let mut sym_ok = true;
            for a in 2..=3 {
                let ring = free_chern_ring(a, trunc)?;
                let chern = (1..=a).map(|j| ring.gen_at(j as usize - 1)).collect();
                let v = ComplexBundleClass::new(&ring, a, chern).map_err(bad)?;
                for aprime in 0..a {
                    for m in -(a + 2)..=(a + 2) {
                        let (val, pass) = sym_push_value(&v, aprime, m)?;
                        sym_ok &= pass;
                        if !pass {
                            sym.push(val);
                        }
                    }
                }
            }
            ok &= sym_ok;
            let v = json!({
                "sweeps": sweeps,
                "sym_push": { "grid": "a in 2..=3, a' < a, |m| <= a+2", "all_pass": sym_ok, "failures": sym },
                "all_pass": ok,
            });
            Ok(Report::checked(v, ok).with_tsv(tsv))
        }
    }
}
