//! Machine-readable output: one JSON object per run, CSV tables for sweeps.

use serde::Serialize;

use cvmem::{ChannelClassification, GaussianChannel, RecalibrationPlan, WitnessEstimate};

use crate::descriptor::{ChannelEcho, PriorEcho, StrategyEcho};

pub const CERTIFIED: &str = "CERTIFIED_NON_EB";
pub const NOT_CERTIFIED: &str = "NOT_CERTIFIED";

/// One-sided decision rule: certified iff `mean + z·stderr < bound`.
pub fn verdict(est: &WitnessEstimate, bound: f64, z: f64) -> &'static str {
    if est.mean + z * est.stderr < bound {
        CERTIFIED
    } else {
        NOT_CERTIFIED
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub strategy: StrategyEcho,
    pub prior_a: PriorEcho,
    pub prior_b: PriorEcho,
    pub rounds: u64,
    pub seed: u64,
    pub chunk_size: u64,
    pub z: f64,
}

#[cfg(test)]
impl ConfigEcho {
    /// Render the resolved configuration back into the `[alice]`/`[eve]`/
    /// `[run]` text format; `ConfigFile::parse` of the result reproduces
    /// every value. Exercised by the round-trip test in `config`.
    pub fn to_config_text(&self) -> String {
        let mut out = String::new();
        out.push_str("[alice]\n");
        out.push_str(&format!("prior = {}\n", self.prior_a.kind));
        if let Some(s) = self.prior_a.sigma {
            out.push_str(&format!("sigma_a = {s}\n"));
        }
        if let Some(s) = self.prior_b.sigma {
            out.push_str(&format!("sigma_b = {s}\n"));
        }
        if let Some(l) = self.prior_a.l {
            out.push_str(&format!("l = {l}\n"));
        }
        if let Some(d) = self.prior_a.delta {
            out.push_str(&format!("delta = {d}\n"));
        }
        out.push_str("\n[eve]\n");
        out.push_str(&format!("strategy = {}\n", self.strategy.name));
        let join = |v: &[f64]| {
            v.iter().map(f64::to_string).collect::<Vec<_>>().join(",")
        };
        if let Some(eta) = self.strategy.eta {
            out.push_str(&format!("eta = {eta}\n"));
        }
        if let Some(nu) = self.strategy.nu {
            out.push_str(&format!("nu = {nu}\n"));
        }
        if let Some(mem) = &self.strategy.memory {
            if let Some(eta) = mem.eta {
                out.push_str(&format!("eta = {eta}\n"));
            }
            if let Some(k) = &mem.k {
                out.push_str(&format!("k = {}\n", join(k)));
            }
            if let Some(m) = &mem.m {
                out.push_str(&format!("m = {}\n", join(m)));
            }
            if let Some(c) = &mem.c {
                out.push_str(&format!("c = {}\n", join(c)));
            }
        }
        out.push_str("\n[run]\n");
        out.push_str(&format!("rounds = {}\n", self.rounds));
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("chunk_size = {}\n", self.chunk_size));
        out.push_str(&format!("z = {}\n", self.z));
        out
    }
}

/// The JSON object emitted by `simulate`. `wall_time_ms` is deliberately the
/// last field: everything before it is a deterministic function of the
/// config.
#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub config: ConfigEcho,
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub bound: f64,
    pub verdict: &'static str,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub channel: ChannelEcho,
    pub n_modes: usize,
    pub is_cp: bool,
    pub is_eb: Option<bool>,
    pub is_gib: bool,
    pub slack_cp: f64,
    pub slack_gib: f64,
    pub slack_eb: Option<f64>,
}

impl ClassifyReport {
    pub fn new(echo: ChannelEcho, ch: &GaussianChannel, cls: &ChannelClassification) -> Self {
        ClassifyReport {
            channel: echo,
            n_modes: ch.n_modes(),
            is_cp: cls.is_cp,
            is_eb: cls.is_eb,
            is_gib: cls.is_gib,
            slack_cp: cls.slack_cp,
            slack_gib: cls.slack_gib,
            slack_eb: cls.slack_eb,
        }
    }

    pub fn flags_line(&self) -> String {
        let eb = match self.is_eb {
            Some(true) => "yes",
            Some(false) => "no",
            None => "undecided",
        };
        format!(
            "CP {}, EB {}, gIB {}",
            if self.is_cp { "yes" } else { "no" },
            eb,
            if self.is_gib { "yes" } else { "no" }
        )
    }

    pub fn print_text(&self) {
        println!("channel: {} ({} mode)", self.channel.label(), self.n_modes);
        println!("{}", self.flags_line());
        println!("slack_cp  = {:+.6e}", self.slack_cp);
        println!("slack_gib = {:+.6e}", self.slack_gib);
        match self.slack_eb {
            Some(s) => println!("slack_eb  = {s:+.6e}"),
            None => println!("slack_eb  = undecided (multi-mode split criterion not solved)"),
        }
    }

    pub fn csv_header() -> &'static str {
        "channel,n_modes,is_cp,is_eb,is_gib,slack_cp,slack_gib,slack_eb"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "\"{}\",{},{},{},{},{},{},{}",
            self.channel.label(),
            self.n_modes,
            self.is_cp,
            self.is_eb.map(|b| b.to_string()).unwrap_or_else(|| "undecided".into()),
            self.is_gib,
            self.slack_cp,
            self.slack_gib,
            self.slack_eb.map(|s| s.to_string()).unwrap_or_default(),
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChannelTriple {
    pub k: Vec<f64>,
    pub m: Vec<f64>,
    pub c: Vec<f64>,
}

impl ChannelTriple {
    pub fn from_channel(ch: &GaussianChannel) -> Self {
        ChannelTriple {
            k: ch.k().transpose().iter().copied().collect(), // row-major
            m: ch.m().transpose().iter().copied().collect(),
            c: ch.c().iter().copied().collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RecalibrateReport {
    pub channel: ChannelEcho,
    pub lambda: f64,
    pub g1: ChannelTriple,
    pub g2: ChannelTriple,
    pub predicted_trace: f64,
    pub predicted_witness: f64,
}

impl RecalibrateReport {
    pub fn new(echo: ChannelEcho, plan: &RecalibrationPlan) -> Self {
        RecalibrateReport {
            channel: echo,
            lambda: plan.lam,
            g1: ChannelTriple::from_channel(&plan.g1),
            g2: ChannelTriple::from_channel(&plan.g2),
            predicted_trace: plan.predicted_trace,
            predicted_witness: plan.predicted_witness,
        }
    }

    pub fn print_text(&self) {
        let fmt2 = |v: &[f64]| {
            format!("[[{}, {}], [{}, {}]]", v[0], v[1], v[2], v[3])
        };
        println!("channel: {}", self.channel.label());
        println!("lambda            = {}", self.lambda);
        println!("G1: K = {}, M = 0, c = [0, 0]", fmt2(&self.g1.k));
        println!(
            "G2: K = {}, M = {}, c = [{}, {}]",
            fmt2(&self.g2.k),
            fmt2(&self.g2.m),
            self.g2.c[0],
            self.g2.c[1]
        );
        println!("predicted trace   = {}", self.predicted_trace);
        println!("predicted witness = {}", self.predicted_witness);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub prior_a: PriorEcho,
    pub prior_b: PriorEcho,
    pub equivalent_sigma_a: f64,
    pub equivalent_sigma_b: f64,
    pub bound: f64,
    /// False when the priors are smoothed-flat: the bound is then only the
    /// Fisher-equivalent Gaussian value, not a proved EB bound.
    pub gaussian_soundness: bool,
}

impl BoundReport {
    pub fn print_text(&self) {
        println!("prior_a: {}", label_of(&self.prior_a));
        println!("prior_b: {}", label_of(&self.prior_b));
        if !self.gaussian_soundness {
            println!("equivalent gaussian sigma_a = {}", self.equivalent_sigma_a);
            println!("equivalent gaussian sigma_b = {}", self.equivalent_sigma_b);
        }
        println!("eb_bound = {}", self.bound);
        if !self.gaussian_soundness {
            println!(
                "note: the EB bound is proved for Gaussian priors; for smoothed-flat priors \
                 this is the Fisher-equivalent value and carries no soundness claim."
            );
        }
    }
}

fn label_of(p: &PriorEcho) -> String {
    match p.kind {
        "gauss" => format!("gauss(sigma={})", p.sigma.unwrap()),
        _ => format!("smoothflat(l={}, delta={})", p.l.unwrap(), p.delta.unwrap()),
    }
}

/// Quoted label, safe for the comma-separated output.
pub fn label_for_csv(p: &PriorEcho) -> String {
    format!("\"{}\"", label_of(p))
}

pub const SWEEP_CSV_HEADER: &str = "eta,is_cp,is_eb,is_gib,strategy,mean,stderr,bound,verdict";

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub eta: f64,
    pub is_cp: bool,
    pub is_eb: bool,
    pub is_gib: bool,
    pub strategy: &'static str,
    pub mean: f64,
    pub stderr: f64,
    pub bound: f64,
    pub verdict: &'static str,
}

impl SweepRow {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.eta,
            self.is_cp,
            self.is_eb,
            self.is_gib,
            self.strategy,
            self.mean,
            self.stderr,
            self.bound,
            self.verdict
        )
    }
}
