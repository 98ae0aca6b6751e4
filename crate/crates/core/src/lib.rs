pub mod closed_forms;
pub mod enumeration;
pub mod families;
pub mod inertia;
pub mod invariants;
pub mod io;
pub mod iso;
pub mod predicates;
pub mod sgraph;
