//! Instance generation, experiment runs, reports and verification suites
//! on top of `maso-core`.

pub mod acceptance;
pub mod algo;
pub mod generate;
pub mod io;
pub mod report;
pub mod run;
pub mod verify;

pub use algo::{Algorithm, Outcome};
pub use generate::{generate, GenParams, GeneratorKind, GraphShape};
pub use report::{Row, Status};
pub use run::{run, ExperimentSpec, NamedInstance};
pub use verify::{run_suite, Suite};
