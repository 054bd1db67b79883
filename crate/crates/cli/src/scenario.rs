//! Scenario files: the declarative run/sweep description every command
//! consumes.
//!
//! The format is TOML with a closed schema — unknown keys are rejected —
//! and all physical quantities carry their unit in the key name
//! (`capacity_bps`, `prop_delay_s`, `packet_size_bits`, `*_packets`).

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use d2tcp_dynamics::analysis::{Observable, SweepParameter, SweepSpec};
use d2tcp_dynamics::{LinkParams, MapState, MarkingPolicy, RedParams, SenderParams};

/// A fully validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub link: LinkParams,
    pub sender: SenderParams,
    pub marking: MarkingPolicy,
    pub initial: MapState,
    pub transient: usize,
    pub samples: usize,
    pub sweep: Option<SweepSettings>,
}

/// Sweep description as stored in the file; run lengths come from `run`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub parameter: SweepParameter,
    pub from: f64,
    pub to: f64,
    pub step: f64,
    pub observable: Observable,
}

impl Scenario {
    /// The sweep joined with this scenario's run lengths, if any.
    pub fn sweep_spec(&self) -> Option<SweepSpec> {
        self.sweep.map(|s| SweepSpec {
            parameter: s.parameter,
            from: s.from,
            to: s.to,
            step: s.step,
            observable: s.observable,
            transient: self.transient,
            samples: self.samples,
        })
    }
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read scenario file {}", path.display()))?;
    parse_scenario(&text).with_context(|| format!("invalid scenario {}", path.display()))
}

/// Parses and validates scenario text. TOML errors carry line/column
/// context; validation errors name the violated invariant.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: ScenarioFile = toml::from_str(text)?;
    raw.validate()
}

/// Serializes a validated scenario back to TOML with all defaults
/// materialized. Loading the output reproduces the scenario exactly.
pub fn serialize_scenario(scenario: &Scenario) -> String {
    toml::to_string_pretty(&ScenarioFile::from_scenario(scenario))
        .expect("scenario serialization cannot fail")
}

// ---------------------------------------------------------------------------
// raw file schema

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    link: LinkFile,
    sender: SenderFile,
    marking: MarkingFile,
    #[serde(default)]
    initial: InitialFile,
    #[serde(default)]
    run: RunFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkFile {
    capacity_bps: f64,
    prop_delay_s: f64,
    packet_size_bits: f64,
    buffer_packets: f64,
    threshold_packets: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SenderFile {
    g: f64,
    gamma: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MarkingFile {
    kind: MarkingKindFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    red: Option<RedFile>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum MarkingKindFile {
    Threshold,
    Red,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RedFile {
    weight: f64,
    q_min_packets: f64,
    q_max_packets: f64,
    p_max: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InitialFile {
    #[serde(default = "default_window")]
    window_packets: f64,
    #[serde(default)]
    alpha: f64,
}

impl Default for InitialFile {
    fn default() -> Self {
        Self {
            window_packets: default_window(),
            alpha: 0.0,
        }
    }
}

fn default_window() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunFile {
    #[serde(default = "default_transient")]
    transient: usize,
    #[serde(default = "default_samples")]
    samples: usize,
}

impl Default for RunFile {
    fn default() -> Self {
        Self {
            transient: default_transient(),
            samples: default_samples(),
        }
    }
}

fn default_transient() -> usize {
    5000
}

fn default_samples() -> usize {
    1000
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    parameter: SweepParameterFile,
    from: f64,
    to: f64,
    step: f64,
    observable: ObservableFile,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
enum SweepParameterFile {
    #[serde(rename = "g")]
    Weight,
    #[serde(rename = "d")]
    PropDelay,
    #[serde(rename = "K")]
    Threshold,
    #[serde(rename = "gamma")]
    Gamma,
}

impl From<SweepParameterFile> for SweepParameter {
    fn from(p: SweepParameterFile) -> Self {
        match p {
            SweepParameterFile::Weight => SweepParameter::Weight,
            SweepParameterFile::PropDelay => SweepParameter::PropDelay,
            SweepParameterFile::Threshold => SweepParameter::Threshold,
            SweepParameterFile::Gamma => SweepParameter::Gamma,
        }
    }
}

impl From<SweepParameter> for SweepParameterFile {
    fn from(p: SweepParameter) -> Self {
        match p {
            SweepParameter::Weight => SweepParameterFile::Weight,
            SweepParameter::PropDelay => SweepParameterFile::PropDelay,
            SweepParameter::Threshold => SweepParameterFile::Threshold,
            SweepParameter::Gamma => SweepParameterFile::Gamma,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ObservableFile {
    Window,
    Alpha,
    Queue,
}

impl From<ObservableFile> for Observable {
    fn from(o: ObservableFile) -> Self {
        match o {
            ObservableFile::Window => Observable::Window,
            ObservableFile::Alpha => Observable::Alpha,
            ObservableFile::Queue => Observable::Queue,
        }
    }
}

impl From<Observable> for ObservableFile {
    fn from(o: Observable) -> Self {
        match o {
            Observable::Window => ObservableFile::Window,
            Observable::Alpha => ObservableFile::Alpha,
            Observable::Queue => ObservableFile::Queue,
        }
    }
}

impl ScenarioFile {
    fn validate(self) -> Result<Scenario> {
        let link = LinkParams::new(
            self.link.capacity_bps,
            self.link.prop_delay_s,
            self.link.packet_size_bits,
            self.link.buffer_packets,
            self.link.threshold_packets,
        )
        .map_err(|e| anyhow!("link: {e}"))?;
        let sender = SenderParams::new(self.sender.g, self.sender.gamma)
            .map_err(|e| anyhow!("sender: {e}"))?;

        let marking = match self.marking.kind {
            MarkingKindFile::Threshold => {
                if self.marking.red.is_some() {
                    bail!("marking.red is only valid with kind = \"red\"");
                }
                MarkingPolicy::Threshold
            }
            MarkingKindFile::Red => {
                let red = self
                    .marking
                    .red
                    .ok_or_else(|| anyhow!("marking.red section is required when kind = \"red\""))?;
                MarkingPolicy::Red(
                    RedParams::new(red.weight, red.q_min_packets, red.q_max_packets, red.p_max)
                        .map_err(|e| anyhow!("marking.red: {e}"))?,
                )
            }
        };

        let initial = MapState::new(self.initial.window_packets, self.initial.alpha)
            .map_err(|e| anyhow!("initial: {e}"))?;

        if self.run.samples == 0 {
            bail!("run.samples must be >= 1");
        }

        let sweep = match self.sweep {
            None => None,
            Some(s) => {
                let settings = SweepSettings {
                    parameter: s.parameter.into(),
                    from: s.from,
                    to: s.to,
                    step: s.step,
                    observable: s.observable.into(),
                };
                let spec = SweepSpec {
                    parameter: settings.parameter,
                    from: settings.from,
                    to: settings.to,
                    step: settings.step,
                    observable: settings.observable,
                    transient: self.run.transient,
                    samples: self.run.samples,
                };
                spec.validate().map_err(|e| anyhow!("sweep: {e}"))?;
                Some(settings)
            }
        };

        Ok(Scenario {
            link,
            sender,
            marking,
            initial,
            transient: self.run.transient,
            samples: self.run.samples,
            sweep,
        })
    }

    fn from_scenario(scenario: &Scenario) -> Self {
        let (kind, red) = match &scenario.marking {
            MarkingPolicy::Threshold => (MarkingKindFile::Threshold, None),
            MarkingPolicy::Red(params) => (
                MarkingKindFile::Red,
                Some(RedFile {
                    weight: params.weight(),
                    q_min_packets: params.q_min_packets(),
                    q_max_packets: params.q_max_packets(),
                    p_max: params.p_max(),
                }),
            ),
        };
        Self {
            link: LinkFile {
                capacity_bps: scenario.link.capacity_bps(),
                prop_delay_s: scenario.link.prop_delay_s(),
                packet_size_bits: scenario.link.packet_size_bits(),
                buffer_packets: scenario.link.buffer_packets(),
                threshold_packets: scenario.link.threshold_packets(),
            },
            sender: SenderFile {
                g: scenario.sender.g(),
                gamma: scenario.sender.gamma(),
            },
            marking: MarkingFile { kind, red },
            initial: InitialFile {
                window_packets: scenario.initial.window(),
                alpha: scenario.initial.alpha(),
            },
            run: RunFile {
                transient: scenario.transient,
                samples: scenario.samples,
            },
            sweep: scenario.sweep.map(|s| SweepFile {
                parameter: s.parameter.into(),
                from: s.from,
                to: s.to,
                step: s.step,
                observable: s.observable.into(),
            }),
        }
    }
}
