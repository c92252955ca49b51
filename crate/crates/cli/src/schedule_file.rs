//! Versioned JSON schedule format: simulation config plus an ordered pulse
//! list. Angles survive a round trip bit-exactly (shortest round-trip
//! decimal on write, exact parse on read).

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use etrap::hilbert::SpaceConfig;
use etrap::pulses::{LambDicke, Pulse, PulseKind, Schedule};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub config: FileConfig,
    pub pulses: Vec<FilePulse>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FileConfig {
    pub n_cyc: usize,
    pub n_ax: usize,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilePulse {
    /// Pulse kind tag: `"s"`, `"sa"` or `"sc"`.
    pub kind: String,
    pub theta: f64,
    pub phi: f64,
}

impl ScheduleFile {
    pub fn from_schedule(schedule: &Schedule, cfg: &SpaceConfig, eta: LambDicke) -> Self {
        ScheduleFile {
            version: FORMAT_VERSION,
            name: Some(schedule.name().to_string()),
            config: FileConfig {
                n_cyc: cfg.n_cyc(),
                n_ax: cfg.n_ax(),
                eta: eta.value(),
            },
            pulses: schedule
                .pulses()
                .iter()
                .map(|p| FilePulse {
                    kind: kind_tag(p.kind).to_string(),
                    theta: p.theta,
                    phi: p.phi,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serialization cannot fail")
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let file: ScheduleFile =
            serde_json::from_str(text).context("malformed schedule file")?;
        if file.version != FORMAT_VERSION {
            bail!(
                "unsupported schedule version {} (this build reads version {FORMAT_VERSION})",
                file.version
            );
        }
        Ok(file)
    }

    /// Simulation context described by the file.
    pub fn context(&self) -> anyhow::Result<(SpaceConfig, LambDicke)> {
        let cfg = SpaceConfig::new(self.config.n_cyc, self.config.n_ax)?;
        let eta = LambDicke::new(self.config.eta)?;
        Ok((cfg, eta))
    }

    pub fn schedule(&self) -> anyhow::Result<Schedule> {
        let mut pulses = Vec::with_capacity(self.pulses.len());
        for (i, p) in self.pulses.iter().enumerate() {
            let kind = parse_kind(&p.kind)
                .with_context(|| format!("pulse {i}: unknown kind {:?}", p.kind))?;
            if !p.theta.is_finite() || !p.phi.is_finite() {
                bail!("pulse {i}: theta and phi must be finite");
            }
            pulses.push(Pulse {
                kind,
                theta: p.theta,
                phi: p.phi,
            });
        }
        let name = self.name.clone().unwrap_or_else(|| "schedule".to_string());
        Ok(Schedule::new(name, pulses))
    }
}

fn kind_tag(kind: PulseKind) -> &'static str {
    match kind {
        PulseKind::S => "s",
        PulseKind::Sa => "sa",
        PulseKind::Sc => "sc",
    }
}

fn parse_kind(tag: &str) -> anyhow::Result<PulseKind> {
    match tag {
        "s" => Ok(PulseKind::S),
        "sa" => Ok(PulseKind::Sa),
        "sc" => Ok(PulseKind::Sc),
        other => bail!("expected \"s\", \"sa\" or \"sc\", got {other:?}"),
    }
}
