use modlearn::adversary::{
    count_justifiable, positive_certificate, prefix_certificate, render_tree, BreadthFirstLearner,
    PositiveAdversary, PrefixAdversary, SingletonAdversary,
};
use modlearn::composite::{
    learn_disjoint_union, learn_prefix_eq, learn_product_cex_mem_pos, learn_product_mem_only,
    learn_product_mem_pos, learn_product_sup,
};
use modlearn::concepts::learners::elimination_learner;
use modlearn::concepts::{equivalent, parse_class, parse_concept};
use modlearn::pac::{rectangle_trial, write_csv, PacMode, PacParams, TrialReport};
use modlearn::protocol::{consistent_concepts, render_transcript, run_session};
use modlearn::{
    Answer, ClassId, HonestOracle, Oracle, Point, Query, QueryKind, SessionResult, SublearnerSpec,
};
use serde_json::json;

use crate::{csv_text, CliError, Construction, ExperimentConfig, Format, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LearnMode {
    Only(QueryKind),
    MemPos,
    CexMemPos(QueryKind),
}

fn learn_mode(s: &str) -> Result<LearnMode, CliError> {
    use QueryKind as K;
    Ok(match s {
        "sup" => LearnMode::Only(K::Sup),
        "mem" => LearnMode::Only(K::Mem),
        "eq" => LearnMode::Only(K::Eq),
        "sub" => LearnMode::Only(K::Sub),
        "pos" => LearnMode::Only(K::Pos),
        "mem+pos" => LearnMode::MemPos,
        "sub+mem+pos" => LearnMode::CexMemPos(K::Sub),
        "eq+mem+pos" => LearnMode::CexMemPos(K::Eq),
        _ => return Err(CliError::Config(format!("unknown learn mode {s:?}"))),
    })
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| CliError::Config(format!("--{flag} is required")))
}

/// A positive example of the target, fetched with one `OnePos` query.
pub(crate) fn one_positive(oracle: &mut dyn Oracle) -> Result<Point, CliError> {
    match oracle.answer(&Query::OnePos)? {
        Answer::Positive(p) => Ok(p),
        a => Err(CliError::Failure(format!("no positive example: the oracle answered {a}"))),
    }
}

fn subs(parts: &[ClassId], kind: QueryKind) -> Vec<SublearnerSpec> {
    parts.iter().map(|c| SublearnerSpec::new(c.clone(), kind)).collect()
}

pub(crate) fn learn(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let class = parse_class(required(&cfg.class, "class")?)?;
    let target = parse_concept(&class, required(&cfg.target, "target")?)?;
    let mode_name = required(&cfg.mode, "mode")?;
    let mode = learn_mode(mode_name)?;
    let mut oracle = HonestOracle::new(class.clone(), target.clone())?;
    let budget = cfg.budget;

    let mut positive = None;
    let mut res: SessionResult = match (&class, mode) {
        (ClassId::Product(parts), LearnMode::Only(QueryKind::Sup)) => {
            learn_product_sup(&subs(parts, QueryKind::Sup), &mut oracle, budget)?
        }
        (ClassId::Product(parts), LearnMode::Only(QueryKind::Mem)) => {
            learn_product_mem_only(&subs(parts, QueryKind::Mem), &mut oracle, budget)?
        }
        (ClassId::Product(parts), LearnMode::MemPos) => {
            let p = one_positive(&mut oracle)?;
            let r = learn_product_mem_pos(&subs(parts, QueryKind::Mem), &mut oracle, &p, budget)?;
            positive = Some(p);
            r
        }
        (ClassId::Product(parts), LearnMode::CexMemPos(kind)) => {
            let p = one_positive(&mut oracle)?;
            let r = learn_product_cex_mem_pos(&subs(parts, kind), &mut oracle, &p, kind, budget)?;
            positive = Some(p);
            r
        }
        (ClassId::Union(parts), LearnMode::Only(kind)) if kind != QueryKind::Pos => {
            learn_disjoint_union(&subs(parts, kind), &mut oracle, kind, budget)?
        }
        (ClassId::Prefix { .. }, LearnMode::Only(kind @ (QueryKind::Eq | QueryKind::Sub))) => {
            learn_prefix_eq(&class, &mut oracle, kind, budget)?
        }
        (ClassId::Product(_) | ClassId::Union(_), LearnMode::Only(kind)) => {
            let mut l = elimination_learner(class.clone(), kind)?;
            run_session(&mut l, &mut oracle, budget)?
        }
        (_, LearnMode::Only(kind)) => {
            let mut l = SublearnerSpec::new(class.clone(), kind).spawn()?;
            run_session(&mut l, &mut oracle, budget)?
        }
        (_, _) => {
            return Err(CliError::Config(format!("mode {mode_name} needs a product class")))
        }
    };
    if positive.is_some() {
        res.stats.record(QueryKind::OnePos);
    }
    let exact = equivalent(&class, &res.hypothesis, &target)?;

    let text = match cfg.format() {
        Format::Json => {
            let v = json!({
                "command": "learn",
                "class": class.to_string(),
                "target": target.to_string(),
                "mode": mode_name,
                "hypothesis": res.hypothesis.to_string(),
                "exact": exact,
                "positive_example": positive.map(|p| p.to_string()),
                "stats": res.stats,
                "transcript": render_transcript(&res.transcript).lines().collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => {
            let mut header = vec!["class", "target", "mode", "hypothesis", "exact", "total"];
            let mut row = vec![
                class.to_string(),
                target.to_string(),
                mode_name.to_string(),
                res.hypothesis.to_string(),
                exact.to_string(),
                res.stats.total.to_string(),
            ];
            for kind in QueryKind::ALL {
                header.push(kind.name());
                row.push(res.stats.count(kind).to_string());
            }
            csv_text(&header, &[row])
        }
    };
    Ok(Report { text, pass: exact })
}

pub(crate) fn lowerbound(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let c = cfg
        .construction
        .ok_or_else(|| CliError::Config("--construction is required".into()))?;
    let (value, rows, header, pass) = match c {
        Construction::Prefix => prefix_report(cfg)?,
        Construction::Singleton => singleton_report(cfg)?,
        Construction::Positive => positive_report(cfg)?,
    };
    let text = match cfg.format() {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&value).expect("json")),
        Format::Csv => csv_text(&header, &rows),
    };
    Ok(Report { text, pass })
}

type LowerBound = (serde_json::Value, Vec<Vec<String>>, Vec<&'static str>, bool);

/// Outcome of driving the breadth-first learner against the prefix
/// adversary up to level `r`.
pub(crate) struct PrefixRun {
    pub queries: u64,
    pub by_level: Vec<usize>,
    pub certificate: Option<String>,
    pub tree: String,
}

pub(crate) fn run_prefix(k: usize, r: usize, kind: QueryKind, budget: u64) -> Result<PrefixRun, CliError> {
    if k == 0 {
        return Err(CliError::Config("--k must be positive".into()));
    }
    let mut adv = PrefixAdversary::new(k, 1 << 20, r + 1);
    let mut bfs = BreadthFirstLearner::new(k, kind, r);
    let res = run_session(&mut bfs, &mut adv, budget)?;
    let by_level = (0..=r).map(|j| count_justifiable(adv.log(), j)).collect::<Result<Vec<_>, _>>()?;
    let certificate = prefix_certificate(adv.class(), adv.log(), &res.transcript, r)?;
    Ok(PrefixRun {
        queries: res.stats.total,
        by_level,
        certificate: certificate.map(|c| c.to_string()),
        tree: render_tree(adv.log()),
    })
}

fn prefix_report(cfg: &ExperimentConfig) -> Result<LowerBound, CliError> {
    let (k, r) = (cfg.k, cfg.r);
    let kind = match cfg.mode.as_deref() {
        None | Some("eq") => QueryKind::Eq,
        Some("sub") => QueryKind::Sub,
        Some(m) => return Err(CliError::Config(format!("prefix construction takes eq or sub, not {m}"))),
    };
    let run = run_prefix(k, r, kind, cfg.budget)?;
    let bound = k.pow(r as u32);
    let level_r = run.by_level[r];
    let pass = level_r == bound && run.certificate.is_some();
    let value = json!({
        "construction": "prefix",
        "k": k,
        "r": r,
        "queries": run.queries,
        "justifiable_by_level": run.by_level,
        "justifiable_at_level_r": level_r,
        "bound": bound,
        "certificate": run.certificate,
        "pass": pass,
        "tree": run.tree.lines().collect::<Vec<_>>(),
    });
    let row = vec![
        k.to_string(),
        r.to_string(),
        run.queries.to_string(),
        level_r.to_string(),
        bound.to_string(),
        run.certificate.unwrap_or_default(),
        pass.to_string(),
    ];
    Ok((value, vec![row], vec!["k", "r", "queries", "justifiable", "bound", "certificate", "pass"], pass))
}

/// One learner driven against the singleton adversary.
pub(crate) struct SingletonRun {
    pub learner: &'static str,
    pub queries: u64,
    /// Consistent targets left after `bound - 1` queries.
    pub candidates: usize,
    pub exact: bool,
}

pub(crate) fn run_singleton(m: u32, k: usize, budget: u64) -> Result<Vec<SingletonRun>, CliError> {
    let needed = (u64::from(m) + 1).pow(k as u32) - 1;
    let mut out = Vec::new();
    let learners: [(&'static str, Option<QueryKind>); 4] = [
        ("elimination-mem", Some(QueryKind::Mem)),
        ("elimination-sub", Some(QueryKind::Sub)),
        ("elimination-eq", Some(QueryKind::Eq)),
        ("product-mem-only", None),
    ];
    for (name, kind) in learners {
        let mut adv = SingletonAdversary::new(m, k);
        let class = adv.class();
        let res = match kind {
            Some(kind) => run_session(&mut elimination_learner(class.clone(), kind)?, &mut adv, budget)?,
            None => {
                let subs = vec![SublearnerSpec::new(ClassId::Singletons { m }, QueryKind::Mem); k];
                learn_product_mem_only(&subs, &mut adv, budget)?
            }
        };
        let cut = res.transcript.len().min(needed.saturating_sub(1) as usize);
        let candidates = consistent_concepts(&class, &res.transcript[..cut].to_vec())?.len();
        let exact = equivalent(&class, &res.hypothesis, &adv.committed_target())?;
        out.push(SingletonRun { learner: name, queries: res.stats.total, candidates, exact });
    }
    Ok(out)
}

fn singleton_report(cfg: &ExperimentConfig) -> Result<LowerBound, CliError> {
    let (m, k) = (cfg.m.unwrap_or(2), cfg.k);
    let bound = (u64::from(m) + 1).pow(k as u32) - 1;
    let runs = run_singleton(m, k, cfg.budget)?;
    let ok = |r: &SingletonRun| r.queries >= bound && (bound == 0 || r.candidates >= 2) && r.exact;
    let pass = runs.iter().all(ok);
    let value = json!({
        "construction": "singleton",
        "m": m,
        "k": k,
        "bound": bound,
        "pass": pass,
        "learners": runs.iter().map(|r| json!({
            "learner": r.learner,
            "queries": r.queries,
            "candidates_before_bound": r.candidates,
            "exact": r.exact,
            "pass": ok(r),
        })).collect::<Vec<_>>(),
    });
    let rows = runs
        .iter()
        .map(|r| {
            vec![
                r.learner.to_string(),
                r.queries.to_string(),
                bound.to_string(),
                r.candidates.to_string(),
                ok(r).to_string(),
            ]
        })
        .collect();
    Ok((value, rows, vec!["learner", "queries", "bound", "candidates", "pass"], pass))
}

/// Consistent concepts of the pair class after `n` adversarial Pos answers.
pub(crate) fn run_positive(n: usize) -> Result<usize, CliError> {
    let u = n.max(1) as u32;
    let mut adv = PositiveAdversary::new(u);
    let mut t = Vec::new();
    for _ in 0..n {
        let a = adv.answer(&Query::Pos)?;
        t.push((Query::Pos, a));
    }
    Ok(positive_certificate(&adv.class(), &t)?)
}

fn positive_report(cfg: &ExperimentConfig) -> Result<LowerBound, CliError> {
    let n = cfg.trials.unwrap_or(20);
    let count = run_positive(n)?;
    let pass = count >= 2;
    let value = json!({
        "construction": "positive",
        "answers": n,
        "consistent_concepts": count,
        "pass": pass,
    });
    let row = vec![n.to_string(), count.to_string(), pass.to_string()];
    Ok((value, vec![row], vec!["answers", "consistent", "pass"], pass))
}

pub(crate) fn pac(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let mode = match cfg.mode.as_deref() {
        None | Some("ex") => PacMode::Ex,
        Some("mem") => PacMode::Mem,
        Some(m) => return Err(CliError::Config(format!("pac mode is ex or mem, not {m}"))),
    };
    let u = cfg.m.unwrap_or(16);
    let trials = cfg.trials.unwrap_or(200);
    let params = PacParams::new(cfg.epsilon, cfg.delta, cfg.b, vec![u.min(2); 2])?;
    let reports = (0..trials as u64)
        .map(|i| rectangle_trial(u, &params, mode, cfg.seed.wrapping_add(i)))
        .collect::<Result<Vec<TrialReport>, _>>()?;

    let failures = reports.iter().filter(|r| r.error > cfg.epsilon).count();
    let sigma = (cfg.delta * (1.0 - cfg.delta) / trials.max(1) as f64).sqrt();
    let threshold = cfg.delta + 3.0 * sigma;
    let fraction = if trials == 0 { 0.0 } else { failures as f64 / trials as f64 };
    let mem_ok = reports.iter().all(|r| r.mem <= 2 * r.m);
    let pass = fraction <= threshold && mem_ok;

    let text = match cfg.format() {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&reports, &mut buf)?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json => {
            let v = json!({
                "command": "pac",
                "mode": if mode == PacMode::Ex { "ex" } else { "mem" },
                "trials": reports,
                "failures": failures,
                "failure_fraction": fraction,
                "threshold": threshold,
                "pass": pass,
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    if !pass {
        eprintln!("failure fraction {fraction:.3} against threshold {threshold:.3}");
    }
    Ok(Report { text, pass })
}
