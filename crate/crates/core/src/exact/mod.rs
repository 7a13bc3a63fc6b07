//! Closed-form solutions, initial data and ODE-driven references.

pub mod dp;
pub mod mudp;
pub mod profile;

pub use dp::{
    dp_peakon, dp_peakon_antipeakon_ic, dp_shock_peakon, dp_soliton, dp_triple_ic,
    dp_two_peakon_ic, dp_wavebreak_ic, sign, SolitonParams, TwoPeakonParams, WavebreakVariant,
};
pub use mudp::{
    evolve_particles, mu_green, mu_green_deriv, mu_peakon_field, mu_peakon_ode_rhs,
    mu_shock_field, mu_shock_ode_rhs, ParticleState, PARTICLE_DT,
};
pub use profile::{
    load_or_generate_profile, mu_smooth_profile, MuSmoothParams, SmoothProfile,
    DEFAULT_PROFILE_CELLS,
};
