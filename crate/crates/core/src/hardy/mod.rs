//! Atoms, the dyadic maximal function, `H_p` quasinorms and quasi-locality
//! integrals on `G x G`.

mod atom;
mod locality;
mod maximal;

pub use atom::{make_atom, Atom, AtomProfile};
pub use locality::{quasilocality_integral, quasilocality_profile, AtomRegion, QuasiLocality};
pub use maximal::{hp_quasinorm, maximal_function, MaximalFunction};
