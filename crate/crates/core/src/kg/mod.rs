//! Entity type graph (schema) and entity graph (instances).
//!
//! Object properties flagged `context_dependent` change with the observer's
//! context (`in`, `do`, `happenIn`, ...) and are regenerated for every stream
//! record by [`snapshot_eg`]. Functions such as `FriendOf` are modelled as
//! context-dependent object properties carrying the `function` flag.

mod graph;
mod schema;
mod snapshot;
mod validate;

pub use graph::{DataValue, Eg, Entity, Triple};
pub use schema::{
    DataPropertyDef, DataType, EntityType, Etg, ObjectPropertyDef, DEFAULT_CONTEXT_DEPENDENT, STRUCTURAL,
};
pub use snapshot::{apply_context_update, snapshot_eg, Snapshot};
pub use validate::{validate_eg, validate_etg};
