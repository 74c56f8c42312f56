use modlearn::composite::{
    learn_product_cex_mem_pos, learn_product_mem_only, learn_product_mem_pos, learn_product_sup,
};
use modlearn::concepts::random::random_concept;
use modlearn::concepts::equivalent;
use modlearn::{ClassId, ConceptDesc, HonestOracle, QueryKind, SessionResult, SublearnerSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{one_positive, run_positive, run_prefix, run_singleton};
use crate::{csv_text, CliError, ExperimentConfig, Format, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Measured counts must not exceed the bound.
    Upper,
    /// Measured counts must reach the bound.
    Lower,
    /// No learner exists; the row carries a non-identifiability certificate.
    Impossible,
}

/// One cell of the complexity table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexityRow {
    pub q: String,
    pub setting: String,
    pub direction: Direction,
    pub measured_q: Option<u64>,
    pub bound_q: Option<u64>,
    pub measured_mem: Option<u64>,
    pub bound_mem: Option<u64>,
    pub pass: bool,
    pub note: String,
}

fn cell(v: Option<u64>, d: Direction) -> String {
    match (v, d) {
        (Some(v), _) => v.to_string(),
        (None, Direction::Impossible) => "not possible".into(),
        (None, _) => String::new(),
    }
}

pub fn emit_table(rows: &[ComplexityRow], format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(rows).expect("json")),
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.q.clone(),
                        r.setting.clone(),
                        serde_json::to_value(r.direction).expect("json").as_str().unwrap_or("").into(),
                        cell(r.measured_q, r.direction),
                        cell(r.bound_q, r.direction),
                        cell(r.measured_mem, r.direction),
                        cell(r.bound_mem, r.direction),
                        r.pass.to_string(),
                        r.note.clone(),
                    ]
                })
                .collect();
            let header = [
                "q", "setting", "direction", "measured_q", "bound_q", "measured_mem", "bound_mem",
                "pass", "note",
            ];
            csv_text(&header, &body)
        }
    }
}

/// Worst case over targets of one upper-bound cell.
#[derive(Default)]
struct Tally {
    q: u64,
    bound_q: u64,
    mem: u64,
    bound_mem: u64,
    pass: bool,
    n: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { pass: true, ..Default::default() }
    }

    fn add(&mut self, q: u64, bound_q: u64, mem: u64, bound_mem: u64, exact: bool) {
        self.q = self.q.max(q);
        self.bound_q = self.bound_q.max(bound_q);
        self.mem = self.mem.max(mem);
        self.bound_mem = self.bound_mem.max(bound_mem);
        self.pass &= exact && q <= bound_q && mem <= bound_mem;
        self.n += 1;
    }

    fn row(&self, q: &str, setting: &str, note: &str) -> ComplexityRow {
        ComplexityRow {
            q: q.into(),
            setting: setting.into(),
            direction: Direction::Upper,
            measured_q: Some(self.q),
            bound_q: Some(self.bound_q),
            measured_mem: Some(self.mem),
            bound_mem: Some(self.bound_mem),
            pass: self.pass,
            note: format!("{note}; worst case over {} targets", self.n),
        }
    }
}

const U: u32 = 8;

fn standalone_sum(base: &ClassId, kind: QueryKind, target: &ConceptDesc) -> Result<u64, CliError> {
    let spec = SublearnerSpec::new(base.clone(), kind);
    let mut sum = 0;
    for part in target.parts().unwrap_or_default() {
        sum += spec.standalone_count(part)?;
    }
    Ok(sum)
}

fn exact(class: &ClassId, res: &SessionResult, target: &ConceptDesc) -> Result<bool, CliError> {
    Ok(equivalent(class, &res.hypothesis, target)?)
}

/// Every row of the complexity table for `k`-fold products.
pub fn complexity_rows(cfg: &ExperimentConfig) -> Result<Vec<ComplexityRow>, CliError> {
    let k = cfg.k;
    if k == 0 {
        return Err(CliError::Config("--k must be positive".into()));
    }
    let base = ClassId::Intervals { u: U };
    let class = ClassId::power(base.clone(), k);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let targets: Vec<ConceptDesc> =
        (0..cfg.trials.unwrap_or(30)).map(|_| random_concept(&class, &mut rng)).collect();
    let budget = cfg.budget;
    let ku = k as u64;
    let spec = |kind| vec![SublearnerSpec::new(base.clone(), kind); k];

    let max_mem = base
        .concepts()?
        .iter()
        .map(|c| SublearnerSpec::new(base.clone(), QueryKind::Mem).standalone_count(c))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let mem_only_bound = (max_mem + 2).pow(k as u32);

    let mut sup = Tally::new();
    let mut mem_only = Tally::new();
    let mut mem_pos = Tally::new();
    let mut sub_pos = Tally::new();
    let mut eq_pos = Tally::new();
    for t in &targets {
        let oracle = || HonestOracle::new(class.clone(), t.clone());

        let r = learn_product_sup(&spec(QueryKind::Sup), &mut oracle()?, budget)?;
        let b = standalone_sum(&base, QueryKind::Sup, t)?;
        sup.add(r.stats.count(QueryKind::Sup), b, r.stats.count(QueryKind::Mem), 0, exact(&class, &r, t)?);

        let r = learn_product_mem_only(&spec(QueryKind::Mem), &mut oracle()?, budget)?;
        let m = r.stats.count(QueryKind::Mem);
        mem_only.add(m, mem_only_bound, m, mem_only_bound, exact(&class, &r, t)?);

        let sum_mem = standalone_sum(&base, QueryKind::Mem, t)?;
        let mut o = oracle()?;
        let p = one_positive(&mut o)?;
        let r = learn_product_mem_pos(&spec(QueryKind::Mem), &mut o, &p, budget)?;
        let m = r.stats.count(QueryKind::Mem);
        mem_pos.add(m, ku * sum_mem, m, ku * sum_mem, exact(&class, &r, t)?);

        for (kind, tally) in [(QueryKind::Sub, &mut sub_pos), (QueryKind::Eq, &mut eq_pos)] {
            let sum = standalone_sum(&base, kind, t)?;
            let mut o = oracle()?;
            let p = one_positive(&mut o)?;
            let r = learn_product_cex_mem_pos(&spec(kind), &mut o, &p, kind, budget)?;
            tally.add(r.stats.count(kind), sum, r.stats.count(QueryKind::Mem), ku * sum, exact(&class, &r, t)?);
        }
    }

    let mut rows = Vec::new();
    let pos = run_positive(20)?;
    rows.push(ComplexityRow {
        q: "Pos".into(),
        setting: "any".into(),
        direction: Direction::Impossible,
        measured_q: None,
        bound_q: None,
        measured_mem: None,
        bound_mem: None,
        pass: pos >= 2,
        note: format!("not possible; {pos} consistent concepts after 20 Pos answers"),
    });
    let grid = format!("intervals({U})^{k}");
    rows.push(sup.row("Sup", "only", &format!("{grid}; bound sum of standalone #sup")));
    rows.push(sup.row("Sup", "mem+1pos", &format!("{grid}; no Mem needed")));
    rows.push(mem_only.row("Mem", "only", &format!("{grid}; bound (max #mem + 2)^k")));

    let m = cfg.m.unwrap_or(2);
    let bound = (u64::from(m) + 1).pow(k as u32) - 1;
    let runs = run_singleton(m, k, budget)?;
    let least = runs.iter().map(|r| r.queries).min().unwrap_or(0);
    rows.push(ComplexityRow {
        q: "Mem".into(),
        setting: "only".into(),
        direction: Direction::Lower,
        measured_q: Some(least),
        bound_q: Some(bound),
        measured_mem: None,
        bound_mem: None,
        pass: runs.iter().all(|r| r.queries >= bound && r.exact),
        note: format!("singletons({m})^{k} adversary; fewest queries over {} learners", runs.len()),
    });
    rows.push(mem_pos.row("Mem", "mem+1pos", &format!("{grid}; bound k * sum of standalone #mem")));

    for (name, kind, tally) in [("Sub", QueryKind::Sub, &sub_pos), ("EQ", QueryKind::Eq, &eq_pos)] {
        let r = cfg.r;
        let run = run_prefix(k, r, kind, budget)?;
        let need = k.pow(r as u32) as u64;
        let got = run.by_level[r] as u64;
        rows.push(ComplexityRow {
            q: name.into(),
            setting: "only".into(),
            direction: Direction::Lower,
            measured_q: Some(got),
            bound_q: Some(need),
            measured_mem: None,
            bound_mem: None,
            pass: got >= need && run.certificate.is_some(),
            note: format!(
                "prefix adversary; justifiable concepts at level {r} after {} queries",
                run.queries
            ),
        });
        rows.push(tally.row(name, "mem+1pos", &format!("{grid}; bounds sum #q and k * sum #q")));
    }
    Ok(rows)
}

pub(crate) fn table(cfg: &ExperimentConfig) -> Result<Report, CliError> {
    let rows = complexity_rows(cfg)?;
    let pass = rows.iter().all(|r| r.pass);
    Ok(Report { text: emit_table(&rows, cfg.format()), pass })
}
