//! JSON messages exchanged with a steering client, and the per-connection
//! handler that turns them into session updates.

use serde::{Deserialize, Serialize};

use super::state::{CollapseMode, HandMap, JoystickInput, SessionConfig, SessionState};
use super::trajectory::{compare_trajectories, TrajectorySample};
use crate::affect::{readout, PsychReadout};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ClientMessage {
    Joystick {
        dx: f64,
        dy: f64,
        rot: f64,
        dt: f64,
    },
    Config {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        hand_map: Option<HandMap>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        collapse_mode: Option<CollapseMode>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    Finish,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ServerMessage {
    State {
        t: f64,
        x: f64,
        y: f64,
        z: f64,
        readout: PsychReadout,
    },
    Collapse {
        outcome: u8,
        t: f64,
    },
    Score {
        mean_dev: f64,
        max_dev: f64,
    },
    Error {
        message: String,
    },
}

pub fn parse_client_message(text: &str) -> Result<ClientMessage> {
    Ok(serde_json::from_str(text)?)
}

/// Serialized, single-owner message processing for one session.
#[derive(Debug, Clone)]
pub struct SessionHandler {
    session: SessionState,
    model: Option<Vec<TrajectorySample>>,
    finished: bool,
}

impl SessionHandler {
    pub fn new(config: SessionConfig, model: Option<Vec<TrajectorySample>>) -> Result<Self> {
        Ok(Self {
            session: SessionState::new(config)?,
            model,
            finished: false,
        })
    }

    pub fn session(&self) -> &SessionState {
        &self.session
    }

    pub fn is_finished(&self) -> bool {
        self.finished
    }

    /// Parses one text frame and handles it; malformed frames yield an error message.
    pub fn handle_text(&mut self, text: &str) -> Vec<ServerMessage> {
        match parse_client_message(text) {
            Ok(msg) => self.handle(msg),
            Err(e) => vec![error_message(e)],
        }
    }

    pub fn handle(&mut self, msg: ClientMessage) -> Vec<ServerMessage> {
        match self.try_handle(msg) {
            Ok(out) => out,
            Err(e) => vec![error_message(e)],
        }
    }

    fn try_handle(&mut self, msg: ClientMessage) -> Result<Vec<ServerMessage>> {
        if self.finished {
            return Err(Error::InvalidInput("session already finished".into()));
        }
        match msg {
            ClientMessage::Joystick { dx, dy, rot, dt } => {
                let collapse = self.session.advance(&JoystickInput { dx, dy, rot, dt })?;
                let mut out = Vec::with_capacity(2);
                let sample = *self.session.last_sample();
                if let Some(rec) = collapse {
                    out.push(ServerMessage::Collapse {
                        outcome: rec.outcome_index as u8,
                        t: sample.t,
                    });
                }
                out.push(ServerMessage::State {
                    t: sample.t,
                    x: sample.x,
                    y: sample.y,
                    z: sample.z,
                    readout: readout(self.session.register())?,
                });
                Ok(out)
            }
            ClientMessage::Config {
                hand_map,
                collapse_mode,
                seed,
            } => {
                if let Some(h) = hand_map {
                    self.session.hand_map = h;
                }
                if let Some(m) = collapse_mode {
                    self.session.collapse_mode = m;
                }
                if let Some(s) = seed {
                    self.session.reseed(s);
                }
                Ok(Vec::new())
            }
            ClientMessage::Finish => {
                self.finished = true;
                match &self.model {
                    Some(model) => {
                        let r = compare_trajectories(model, self.session.trajectory())?;
                        Ok(vec![ServerMessage::Score {
                            mean_dev: r.mean_dev,
                            max_dev: r.max_dev,
                        }])
                    }
                    None => Ok(Vec::new()),
                }
            }
        }
    }
}

fn error_message(e: Error) -> ServerMessage {
    ServerMessage::Error {
        message: e.to_string(),
    }
}

/// Feeds a newline-delimited log of client messages through a fresh handler.
/// Blank lines are skipped; any rejected frame aborts the replay.
pub fn replay_log(
    log: &str,
    config: SessionConfig,
    model: Option<Vec<TrajectorySample>>,
) -> Result<(SessionHandler, Vec<ServerMessage>)> {
    let mut handler = SessionHandler::new(config, model)?;
    let mut transcript = Vec::new();
    for (i, line) in log.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let msg = parse_client_message(line)
            .map_err(|e| Error::Parse(format!("log line {}: {e}", i + 1)))?;
        let out = handler.try_handle(msg)?;
        transcript.extend(out);
    }
    Ok((handler, transcript))
}
