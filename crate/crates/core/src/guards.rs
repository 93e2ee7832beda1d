//! Hard size limits for the enumeration oracles and the exact big-integer
//! path. `GROWTH_MAX_N` can lower (never raise) every limit.

use crate::families::DiagramFamily;

pub const MAX_N_ENV: &str = "GROWTH_MAX_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Bottom points for non-planar enumeration.
    pub non_planar_points: usize,
    /// Bottom points for planar enumeration.
    pub planar_points: usize,
    /// Planar partitions grow like `4^n`, so they get their own cap.
    pub planar_partition_points: usize,
    pub multitableaux_cells: usize,
    pub multitableaux_colors: u32,
    /// Upper bound on `q^(n(n+1)/2)` for the finite-field oracle.
    pub field_work: u64,
    /// Largest `n` for exact `b_n` in asymptotic reports.
    pub exact_cob: usize,
    pub exact_motzkin: usize,
    pub exact_default: usize,
    /// Optional global cap from the environment.
    pub max_n: Option<usize>,
}

impl Default for Guards {
    fn default() -> Self {
        Self {
            non_planar_points: 12,
            planar_points: 16,
            planar_partition_points: 12,
            multitableaux_cells: 20,
            multitableaux_colors: 6,
            field_work: 50_000_000,
            exact_cob: 3_000,
            exact_motzkin: 1_000,
            exact_default: 20_000,
            max_n: None,
        }
    }
}

impl Guards {
    /// Defaults, lowered by `GROWTH_MAX_N` when it parses as an integer.
    pub fn from_env() -> Self {
        let max_n = std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok());
        Self {
            max_n,
            ..Self::default()
        }
    }

    fn cap(&self, limit: usize) -> usize {
        self.max_n.map_or(limit, |m| m.min(limit))
    }

    /// Largest `n` the enumeration oracle accepts for `family` (GL_t(F_q)
    /// is bounded separately by `field_work`).
    pub fn oracle_limit(&self, family: DiagramFamily) -> usize {
        let limit = match family {
            DiagramFamily::PlanarPartition => self.planar_partition_points,
            f if f.is_planar() => self.planar_points,
            // 2n bottom points
            DiagramFamily::OrientedUpDown => self.non_planar_points / 2,
            _ => self.non_planar_points,
        };
        self.cap(limit)
    }

    pub fn exact_limit(&self, family: DiagramFamily) -> usize {
        let limit = match family {
            DiagramFamily::Cob { .. } | DiagramFamily::Partition => self.exact_cob,
            DiagramFamily::Motzkin => self.exact_motzkin,
            DiagramFamily::GlFq { .. } => self.exact_default / 10,
            _ => self.exact_default,
        };
        self.cap(limit)
    }

    pub fn multitableaux_limits(&self) -> (usize, u32) {
        (self.cap(self.multitableaux_cells), self.multitableaux_colors)
    }
}
