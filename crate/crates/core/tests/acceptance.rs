//! One line per acceptance criterion; exits non-zero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use clap::Parser;
use recollement::builtins;
use recollement::catalog::module_catalog;
use recollement::cli::{run, Cli};
use recollement::ideal::{
    check_tor_criterion, enumerate_idempotent_ideals, idempotent_to_ideal, tor1_self_quotient, EnumerationMode, Ideal,
};
use recollement::kuhn::{idempotent_generation_check, kuhn_construction, verify_equivalence_witness, GeneratorSpec};
use recollement::report::Check;
use recollement::ttf::{catalog_sequences, jans_bijection, verify_radical_functor};
use recollement::{check_quotient_equivalence, recollement_from_idempotent, verify_recollement, Algebra, Element};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn load(name: &str) -> Arc<Algebra> {
    Arc::new(builtins::load(name).unwrap())
}

fn idempotents(a: &Algebra) -> Vec<Element> {
    a.vertex_subset_idempotents()
        .unwrap_or_else(|| a.enumerate_idempotents(1 << 16).unwrap())
}

fn failures(tag: &str, checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{tag}: {} ({:?})", c.name, c.counterexample))
        .collect()
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("{what} took {t:?}, limit {limit:?}"))
    }
}

fn jans() -> Outcome {
    let start = Instant::now();
    let expected = [("F2", 2), ("F2xF2", 4), ("F2[x]/x2", 2), ("T2_F2", 4), ("M2_F2", 2)];
    let mut got = Vec::new();
    for (name, want) in expected {
        let j = jans_bijection(&load(name), 2, EnumerationMode::Brute).map_err(|e| e.to_string())?;
        if j.ideals.len() != want || j.classes.len() != want {
            return Err(format!("{name}: {} ideals, {} classes, expected {want}", j.ideals.len(), j.classes.len()));
        }
        if !j.is_bijection() {
            return Err(format!("{name}: matching {:?} round trip {:?}", j.matching, j.round_trip));
        }
        got.push(j.classes.len().to_string());
    }
    within(start, Duration::from_secs(10), "Jans")?;
    Ok(format!("ideal and TTF class counts {} agree, round trips are identities", got.join(", ")))
}

fn recollement_axioms() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    let mut records = 0;
    let mut bad = Vec::new();
    for name in ["T2_F2", "T3_F2", "A3_quiver_with_zero_relation"] {
        let a = load(name);
        let ca = module_catalog(&a, 3).map_err(|e| e.to_string())?;
        for e in idempotents(&a) {
            let r = recollement_from_idempotent(&a, &e).map_err(|e| e.to_string())?;
            let cc = module_catalog(r.corner_algebra(), 3).map_err(|e| e.to_string())?;
            let cb = module_catalog(r.quotient_algebra(), 3).map_err(|e| e.to_string())?;
            let checks = verify_recollement(&r, &ca, &cc, &cb).map_err(|e| e.to_string())?;
            records += checks.iter().map(|c| c.instances).sum::<usize>();
            bad.extend(failures(&format!("{name} e={}", a.format(&e)), &checks));
            count += 1;
        }
    }
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    within(start, Duration::from_secs(60), "recollement axioms")?;
    Ok(format!("{count} recollements at bound 3, {records} instances, zero failures"))
}

fn gabriel() -> Outcome {
    let mut pairs = 0;
    let mut bad = Vec::new();
    let cases = [
        ("F2", 2),
        ("F2xF2", 2),
        ("F2[x]/x2", 2),
        ("T2_F2", 3),
        ("M2_F2", 2),
        ("T3_F2", 3),
        ("A3_quiver_with_zero_relation", 3),
    ];
    for (name, bound) in cases {
        let a = load(name);
        let ca = module_catalog(&a, bound).map_err(|e| e.to_string())?;
        for e in idempotents(&a) {
            let r = recollement_from_idempotent(&a, &e).map_err(|e| e.to_string())?;
            let checks = check_quotient_equivalence(&r, &ca).map_err(|e| e.to_string())?;
            pairs += checks[0].instances;
            bad.extend(failures(&format!("{name} e={}", a.format(&e)), &checks));
        }
    }
    if bad.is_empty() {
        Ok(format!("{pairs} module pairs: quotient Hom equals corner Hom, adjacent colimit stages stabilize"))
    } else {
        Err(bad.join("; "))
    }
}

fn tor() -> Outcome {
    let mut n = 0;
    for name in builtins::NAMES {
        let a = load(name);
        let c = check_tor_criterion(&a).map_err(|e| e.to_string())?;
        if !c.passed {
            return Err(format!("{name}: {:?}", c.counterexample));
        }
        n += c.instances;
        for i in enumerate_idempotent_ideals(&a, EnumerationMode::Brute).map_err(|e| e.to_string())? {
            let t = tor1_self_quotient(&i).map_err(|e| e.to_string())?;
            if t.tor_dim != 0 {
                return Err(format!("{name}: idempotent ideal {} has Tor dim {}", i.describe(), t.tor_dim));
            }
        }
    }
    let t2 = load("T2_F2");
    let rad = tor1_self_quotient(&Ideal::radical(&t2).unwrap()).map_err(|e| e.to_string())?;
    if rad.tor_dim != 1 {
        return Err(format!("rad T2: Tor dim {}", rad.tor_dim));
    }
    Ok(format!("{n} ideals over all built-ins; 0 on idempotent ideals, 1 on rad T2"))
}

fn kuhn() -> Outcome {
    let start = Instant::now();
    let cases = [("T2_F2", "e11"), ("T3_F2", "e11+e22"), ("T3_F2", "e33")];
    let mut certs = 0;
    for (name, e) in cases {
        let a = load(name);
        let e = a.parse_element(e).unwrap();
        let i = idempotent_to_ideal(&a, &e).map_err(|e| e.to_string())?;
        let cat = module_catalog(&a, 2).map_err(|e| e.to_string())?;
        let w = kuhn_construction(&a, &i, &GeneratorSpec::default(), &cat).map_err(|e| e.to_string())?;
        let checks = verify_equivalence_witness(&w).map_err(|e| e.to_string())?;
        let bad = failures(name, &checks);
        if !bad.is_empty() {
            return Err(bad.join("; "));
        }
        if w.certificates.len() != cat.len() {
            return Err(format!("{name}: {} certificates for {} modules", w.certificates.len(), cat.len()));
        }
        if name == "T2_F2" && (w.n != 1 || w.corner.algebra.dim() != 1) {
            return Err(format!("T2: n = {}, corner dim {}", w.n, w.corner.algebra.dim()));
        }
        certs += w.certificates.len();
    }
    within(start, Duration::from_secs(30), "Kuhn")?;
    Ok(format!("3 witnesses, ring maps multiplicative and bijective, {certs} certificates invertible"))
}

fn generation() -> Outcome {
    let mut n = 0;
    for name in ["T2_F2", "F2xF2"] {
        let a = load(name);
        for i in enumerate_idempotent_ideals(&a, EnumerationMode::Brute).map_err(|e| e.to_string())? {
            match idempotent_generation_check(&a, &i).map_err(|e| e.to_string())? {
                Some(e) if idempotent_to_ideal(&a, &e).unwrap() == i => n += 1,
                other => return Err(format!("{name}: {} gave {other:?}", i.describe())),
            }
        }
    }
    Ok(format!("{n} idempotent ideals, each equal to AeA for the returned e"))
}

fn radical_functors() -> Outcome {
    let mut n = 0;
    for name in builtins::NAMES {
        let a = load(name);
        let cat = module_catalog(&a, 2).map_err(|e| e.to_string())?;
        let seqs = catalog_sequences(&cat).map_err(|e| e.to_string())?;
        for i in enumerate_idempotent_ideals(&a, EnumerationMode::Brute).map_err(|e| e.to_string())? {
            let checks = verify_radical_functor(&i, &seqs, &cat).map_err(|e| e.to_string())?;
            let bad = failures(&format!("{name} I={}", i.describe()), &checks);
            if !bad.is_empty() {
                return Err(bad.join("; "));
            }
            n += checks.iter().map(|c| c.instances).sum::<usize>();
        }
    }
    Ok(format!("(-)[I] and (-)·I on all built-ins, {n} instances"))
}

fn determinism() -> Outcome {
    let commands = ["analyze", "jans-check", "verify-recollement", "kuhn-demo", "ideals", "ttf"];
    for algebra in ["T2_F2", "T3_F2"] {
        for cmd in commands {
            let argv = ["recollement", cmd, "--algebra", algebra, "--dim-bound", "2", "--seed", "17"];
            let once = || -> Result<String, String> {
                let cli = Cli::try_parse_from(argv).map_err(|e| e.to_string())?;
                let (report, _) = run(&cli).map_err(|e| e.to_string())?;
                Ok(report.to_json())
            };
            let (x, y) = (once()?, once()?);
            if x != y {
                return Err(format!("{cmd} on {algebra} differs between runs"));
            }
        }
    }
    Ok("six subcommands on T2_F2 and T3_F2, seed 17: byte-identical reports".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Jans bijection", jans),
        ("recollement axioms", recollement_axioms),
        ("Gabriel quotient formula", gabriel),
        ("Tor criterion", tor),
        ("Kuhn construction", kuhn),
        ("idempotent generation", generation),
        ("radical functors", radical_functors),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("acceptance {}: {name}: PASS ({secs:.2} s) {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("acceptance {}: {name}: FAIL ({secs:.2} s) {msg}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
