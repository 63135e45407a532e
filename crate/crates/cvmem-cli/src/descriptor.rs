//! Descriptors shared by CLI flags and config files: channels, priors and
//! strategies, plus their constructors and JSON echo forms.

use clap::ValueEnum;
use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use cvmem::{
    amplifier, eb_prior_mean_strategy, eb_shrinkage_strategy, generic_recalibrated_strategy,
    honest_strategy, identity, photon_loss, tailored_loss_strategy, EveStrategy, GaussianChannel,
    Prior,
};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChannelKind {
    PhotonLoss,
    Amplifier,
    Identity,
    Custom,
}

/// Raw channel parameters as given on the command line or in a config file.
#[derive(Debug, Clone, Default)]
pub struct ChannelParams {
    pub eta: Option<f64>,
    pub nu: Option<f64>,
    pub k: Option<Vec<f64>>,
    pub m: Option<Vec<f64>>,
    pub c: Option<Vec<f64>>,
}

/// A resolved channel plus its echo description.
#[derive(Debug, Clone)]
pub struct ChannelDesc {
    pub channel: GaussianChannel,
    pub echo: ChannelEcho,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ChannelEcho {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<f64>>,
}

impl ChannelEcho {
    fn bare(kind: &'static str) -> Self {
        ChannelEcho { kind, eta: None, nu: None, k: None, m: None, c: None }
    }

    pub fn label(&self) -> String {
        match self.kind {
            "photon-loss" => format!("photon-loss(eta={})", self.eta.unwrap()),
            "amplifier" => format!("amplifier(nu={})", self.nu.unwrap()),
            "identity" => "identity".to_string(),
            _ => format!(
                "custom(k={:?}, m={:?}, c={:?})",
                self.k.as_ref().unwrap(),
                self.m.as_ref().unwrap(),
                self.c.as_ref().unwrap()
            ),
        }
    }
}

fn matrix2(name: &str, entries: &[f64]) -> Result<DMatrix<f64>, CliError> {
    if entries.len() != 4 {
        return Err(CliError::usage(format!(
            "--{name} expects 4 comma-separated entries (row-major 2×2), got {}",
            entries.len()
        )));
    }
    Ok(DMatrix::from_row_slice(2, 2, entries))
}

pub fn build_channel(kind: ChannelKind, params: &ChannelParams) -> Result<ChannelDesc, CliError> {
    match kind {
        ChannelKind::PhotonLoss => {
            let eta = params
                .eta
                .ok_or_else(|| CliError::usage("photon-loss requires --eta"))?;
            Ok(ChannelDesc {
                channel: photon_loss(eta)?,
                echo: ChannelEcho { eta: Some(eta), ..ChannelEcho::bare("photon-loss") },
            })
        }
        ChannelKind::Amplifier => {
            let nu = params
                .nu
                .ok_or_else(|| CliError::usage("amplifier requires --nu"))?;
            Ok(ChannelDesc {
                channel: amplifier(nu)?,
                echo: ChannelEcho { nu: Some(nu), ..ChannelEcho::bare("amplifier") },
            })
        }
        ChannelKind::Identity => Ok(ChannelDesc {
            channel: identity(1),
            echo: ChannelEcho::bare("identity"),
        }),
        ChannelKind::Custom => {
            let k_entries = params
                .k
                .as_ref()
                .ok_or_else(|| CliError::usage("custom channel requires --k"))?;
            let m_entries = params
                .m
                .as_ref()
                .ok_or_else(|| CliError::usage("custom channel requires --m"))?;
            let c_entries = params.c.clone().unwrap_or_else(|| vec![0.0, 0.0]);
            if c_entries.len() != 2 {
                return Err(CliError::usage("--c expects 2 comma-separated entries"));
            }
            let k = matrix2("k", k_entries)?;
            let m = matrix2("m", m_entries)?;
            let channel =
                GaussianChannel::new(k, m, DVector::from_column_slice(&c_entries))?;
            Ok(ChannelDesc {
                channel,
                echo: ChannelEcho {
                    k: Some(k_entries.clone()),
                    m: Some(m_entries.clone()),
                    c: Some(c_entries),
                    ..ChannelEcho::bare("custom")
                },
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PriorKind {
    Gauss,
    Smoothflat,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct PriorEcho {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct PriorDesc {
    pub prior: Prior,
    pub echo: PriorEcho,
}

/// Build the two priors from the shared flags. Gaussian priors need
/// per-arm widths; smoothed-flat priors share `(l, δ)` across both arms.
pub fn build_priors(
    kind: PriorKind,
    sigma_a: Option<f64>,
    sigma_b: Option<f64>,
    l: Option<f64>,
    delta: Option<f64>,
) -> Result<(PriorDesc, PriorDesc), CliError> {
    match kind {
        PriorKind::Gauss => {
            let sa = sigma_a.ok_or_else(|| CliError::usage("gauss prior requires --sigma-a"))?;
            let sb = sigma_b.ok_or_else(|| CliError::usage("gauss prior requires --sigma-b"))?;
            let mk = |s: f64| -> Result<PriorDesc, CliError> {
                Ok(PriorDesc {
                    prior: Prior::gaussian(s)?,
                    echo: PriorEcho { kind: "gauss", sigma: Some(s), l: None, delta: None },
                })
            };
            Ok((mk(sa)?, mk(sb)?))
        }
        PriorKind::Smoothflat => {
            let l = l.ok_or_else(|| CliError::usage("smoothflat prior requires --l"))?;
            let d = delta.ok_or_else(|| CliError::usage("smoothflat prior requires --delta"))?;
            let mk = || -> Result<PriorDesc, CliError> {
                Ok(PriorDesc {
                    prior: Prior::smooth_flat(l, d)?,
                    echo: PriorEcho { kind: "smoothflat", sigma: None, l: Some(l), delta: Some(d) },
                })
            };
            Ok((mk()?, mk()?))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    Honest,
    Tailored,
    Recalibrated,
    EbShrinkage,
    EbPriorMean,
}

impl StrategyKind {
    pub fn parse_name(name: &str) -> Result<Self, CliError> {
        <Self as ValueEnum>::from_str(name, true)
            .map_err(|_| CliError::usage(format!("unknown strategy `{name}`")))
    }

    pub fn name(&self) -> &'static str {
        match self {
            StrategyKind::Honest => "honest",
            StrategyKind::Tailored => "tailored",
            StrategyKind::Recalibrated => "recalibrated",
            StrategyKind::EbShrinkage => "eb-shrinkage",
            StrategyKind::EbPriorMean => "eb-prior-mean",
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct StrategyEcho {
    pub name: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub memory: Option<ChannelEcho>,
}

/// Build Eve's strategy. The EB strategies receive the priors' widths —
/// the adversary is assumed to know the input distributions.
pub fn build_strategy(
    kind: StrategyKind,
    params: &ChannelParams,
    prior_a: &PriorDesc,
    prior_b: &PriorDesc,
) -> Result<(EveStrategy, StrategyEcho), CliError> {
    let bare = StrategyEcho { name: kind.name(), eta: None, nu: None, memory: None };
    match kind {
        StrategyKind::Honest => Ok((honest_strategy(), bare)),
        StrategyKind::Tailored => {
            let eta = params
                .eta
                .ok_or_else(|| CliError::usage("tailored strategy requires --eta"))?;
            let nu = params.nu.unwrap_or(1.0);
            Ok((
                tailored_loss_strategy(eta, nu)?,
                StrategyEcho { eta: Some(eta), nu: Some(nu), ..bare },
            ))
        }
        StrategyKind::Recalibrated => {
            // the memory is a custom channel when --k/--m are given,
            // otherwise photon loss at --eta
            let mem = if params.k.is_some() || params.m.is_some() {
                build_channel(ChannelKind::Custom, params)?
            } else if params.eta.is_some() {
                build_channel(ChannelKind::PhotonLoss, params)?
            } else {
                return Err(CliError::usage(
                    "recalibrated strategy requires a memory: --eta or --k/--m",
                ));
            };
            Ok((
                generic_recalibrated_strategy(mem.channel)?,
                StrategyEcho { memory: Some(mem.echo), ..bare },
            ))
        }
        StrategyKind::EbShrinkage => {
            let sa = prior_a.prior.fisher_equivalent_sigma();
            let sb = prior_b.prior.fisher_equivalent_sigma();
            Ok((eb_shrinkage_strategy(sa, sb)?, bare))
        }
        StrategyKind::EbPriorMean => Ok((eb_prior_mean_strategy(), bare)),
    }
}
