//! Grid scans producing one TSV row per grid point.

use rayon::prelude::*;
use superfiltr::gl_modules::{
    check_good_filtration, check_weyl_filtration, exterior_power, symmetric_power, Answer, FiltrationVerdict,
};
use superfiltr::weights::{is_steinberg_weight, marko_irreducible, steinberg_weight};
use superfiltr::BlockShape;

use crate::config::{Kind, ScanConfig};
use crate::predictions;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Filtration {
        kind: Kind,
        good: bool,
        m: usize,
        n: usize,
        p: u64,
        k: usize,
    },
    Steinberg {
        m: usize,
        n: usize,
        p: u64,
        r: u32,
        s: i64,
        t: i64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub param: String,
    pub check: String,
    pub answer: String,
    pub certificate: String,
    pub predicted: String,
    pub agree: bool,
}

pub const HEADER: &str = "kind\tm\tn\tp\tparam\tcheck\tanswer\tcertificate\tpredicted\tstatus";

impl ScanRow {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.kind,
            self.m,
            self.n,
            self.p,
            self.param,
            self.check,
            self.answer,
            self.certificate,
            self.predicted,
            if self.agree { "AGREE" } else { "DISAGREE" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    pub fn disagreements(&self) -> usize {
        self.rows.iter().filter(|r| !r.agree).count()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.to_tsv());
            out.push('\n');
        }
        out
    }
}

/// Grid points in parameter-tuple order.
pub fn tasks(cfg: &ScanConfig) -> Vec<Task> {
    let mut kinds = cfg.kinds.clone();
    kinds.sort();
    kinds.dedup();
    let mut out = Vec::new();
    for &kind in &kinds {
        for &(m, n) in &cfg.shapes {
            for &p in &cfg.primes {
                for k in cfg.k_range.0..=cfg.k_range.1 {
                    if cfg.mode.good() {
                        out.push(Task::Filtration {
                            kind,
                            good: true,
                            m,
                            n,
                            p,
                            k,
                        });
                    }
                    if cfg.mode.weyl() {
                        out.push(Task::Filtration {
                            kind,
                            good: false,
                            m,
                            n,
                            p,
                            k,
                        });
                    }
                }
            }
        }
    }
    if let (Some(r), Some(s), Some(t)) = (cfg.r_range, cfg.s_range, cfg.t_range) {
        for &(m, n) in &cfg.shapes {
            for &p in &cfg.primes {
                for r in r.0..=r.1 {
                    for s in s.0..=s.1 {
                        for t in t.0..=t.1 {
                            out.push(Task::Steinberg { m, n, p, r, s, t });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn certificate(v: &FiltrationVerdict, good: bool) -> String {
    match v.answer {
        Answer::NotInjectiveOverU => {
            format!("{}={}", if good { "H^1" } else { "H_1" }, v.degree_one_dim)
        }
        Answer::NegativeMultiplicity | Answer::YesCharacterLevel => {
            let entries: Vec<String> = v
                .multiplicities
                .iter()
                .filter(|e| v.answer.is_yes() || e.multiplicity.starts_with('-'))
                .map(|e| format!("{}:{}", e.weight, e.multiplicity))
                .collect();
            if entries.is_empty() {
                "empty".into()
            } else {
                entries.join(",")
            }
        }
    }
}

fn yes_no(b: bool) -> String {
    if b { "Yes" } else { "No" }.into()
}

pub fn run_task(task: &Task) -> anyhow::Result<ScanRow> {
    match *task {
        Task::Filtration { kind, good, m, n, p, k } => {
            let shape = BlockShape::new(m, n, p)?;
            let module = match kind {
                Kind::Exterior => exterior_power(shape, k)?,
                Kind::Symmetric => symmetric_power(shape, k)?,
            };
            let verdict = if good {
                check_good_filtration(&module)?
            } else {
                check_weyl_filtration(&module)?
            };
            let predicted = match (kind, good) {
                (Kind::Exterior, true) => predictions::exterior_good(m, n, p, k),
                (Kind::Exterior, false) => predictions::exterior_weyl(m, n, p, k),
                (Kind::Symmetric, _) => predictions::symmetric(m, n, p, k),
            };
            Ok(ScanRow {
                kind: module.kind().to_string(),
                m,
                n,
                p,
                param: format!("k={k}"),
                check: if good { "good" } else { "weyl" }.into(),
                answer: verdict.answer.to_string(),
                certificate: certificate(&verdict, good),
                predicted: yes_no(predicted),
                agree: verdict.answer.is_yes() == predicted,
            })
        }
        Task::Steinberg { m, n, p, r, s, t } => {
            let shape = BlockShape::new(m, n, p)?;
            let pi = steinberg_weight(shape, r, s, t)?;
            let by_pairing = marko_irreducible(&pi)?;
            let by_criterion = is_steinberg_weight(shape, r, s, t)?;
            Ok(ScanRow {
                kind: "steinberg".into(),
                m,
                n,
                p,
                param: format!("r={r},s={s},t={t}"),
                check: "irreducible".into(),
                answer: yes_no(by_pairing),
                certificate: pi.to_string(),
                predicted: yes_no(by_criterion),
                agree: by_pairing == by_criterion,
            })
        }
    }
}

/// Evaluate every grid point in parallel; rows keep the task order.
pub fn run_scan(cfg: &ScanConfig) -> anyhow::Result<ScanReport> {
    cfg.validate()?;
    let rows = tasks(cfg)
        .par_iter()
        .map(run_task)
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(ScanReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Mode;

    fn cfg(kind: Kind) -> ScanConfig {
        ScanConfig {
            shapes: vec![(1, 1)],
            primes: vec![3],
            k_range: (0, 8),
            kinds: vec![kind],
            mode: Mode::Good,
            r_range: None,
            s_range: None,
            t_range: None,
        }
    }

    fn yes_ks(report: &ScanReport) -> Vec<usize> {
        report
            .rows
            .iter()
            .filter(|r| r.answer == "Yes_CharacterLevel")
            .map(|r| r.param.trim_start_matches("k=").parse().unwrap())
            .collect()
    }

    #[test]
    fn exterior_scan_example() {
        let report = run_scan(&cfg(Kind::Exterior)).unwrap();
        assert_eq!(report.rows.len(), 9);
        assert_eq!(yes_ks(&report), vec![1, 2, 4, 5, 7, 8]);
        assert_eq!(report.disagreements(), 0);
    }

    #[test]
    fn symmetric_scan_reports_disagreement_with_prediction() {
        // the computed answer is Yes for every k ≥ 1; the predicted column
        // stops at k < p, so rows k = 3..8 are flagged
        let report = run_scan(&cfg(Kind::Symmetric)).unwrap();
        assert_eq!(yes_ks(&report), (1..=8).collect::<Vec<_>>());
        assert_eq!(report.disagreements(), 6);
    }

    #[test]
    fn steinberg_rows_agree() {
        let mut c = cfg(Kind::Exterior);
        c.k_range = (0, 0);
        c.r_range = Some((1, 2));
        c.s_range = Some((-1, 1));
        c.t_range = Some((0, 1));
        let report = run_scan(&c).unwrap();
        let st: Vec<&ScanRow> = report.rows.iter().filter(|r| r.kind == "steinberg").collect();
        assert_eq!(st.len(), 2 * 3 * 2);
        assert!(st.iter().all(|r| r.agree));
    }

    #[test]
    fn tsv_has_header_and_rows() {
        let report = run_scan(&cfg(Kind::Exterior)).unwrap();
        let tsv = report.to_tsv();
        assert!(tsv.starts_with(HEADER));
        assert_eq!(tsv.lines().count(), 10);
        assert_eq!(tsv.lines().nth(1).unwrap().split('\t').count(), 10);
    }

    #[test]
    fn output_is_independent_of_thread_count() {
        let mut c = cfg(Kind::Exterior);
        c.shapes = vec![(1, 1), (2, 1)];
        c.primes = vec![3, 5];
        c.kinds = vec![Kind::Symmetric, Kind::Exterior];
        c.mode = Mode::Both;
        let pool = |t| rayon::ThreadPoolBuilder::new().num_threads(t).build().unwrap();
        let one = pool(1).install(|| run_scan(&c)).unwrap();
        let four = pool(4).install(|| run_scan(&c)).unwrap();
        assert_eq!(one.to_tsv(), four.to_tsv());
        assert_eq!(one.rows[0].kind, "exterior");
    }
}
