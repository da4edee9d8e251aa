//! Joystick steering sessions: live register updates, collapse events,
//! trajectory recording and model-versus-human comparison.

mod protocol;
mod state;
mod trajectory;

pub use protocol::{
    parse_client_message, replay_log, ClientMessage, ServerMessage, SessionHandler,
};
pub use state::{
    CollapseMode, HandMap, JoystickInput, SessionConfig, SessionState, DEFAULT_COLLAPSE_THRESHOLD,
    DEFAULT_OMEGA,
};
pub use trajectory::{
    compare_trajectories, parse_script_json, parse_trajectory_csv, predict_trajectory,
    write_trajectory_csv, DeviationReport, TrajectorySample, TrajectoryScript, Waypoint,
    CSV_HEADER, DEFAULT_DT, MAX_SAMPLES,
};
