//! Monte Carlo experiments: sub-Gaussian tails of `U` and `D` contracted
//! against a fixed vector, the complex ε-net, the spectral-radius scaling of
//! `D(n,k,p)` and a Hölder sweep. Every trial runs on its own derived seed,
//! so results do not depend on the worker count.

mod holder;
mod net;
mod radius;
mod tail;

pub use holder::{holder_sweep, HolderSweep};
pub use net::{
    build_net, coord_gap, net_cover_check, net_delta, net_size_bound, rounding_cover_check, CoverCheck, NetSpec,
};
pub use radius::{radius_bound, radius_scaling_study, RadiusStudyRow, RadiusTrial, RatioStats};
pub use tail::{tail_estimate, uniform_unit, TailEstimate, TailKind, Thresholds, DEFAULT_FIT_FLOOR_COUNT};
