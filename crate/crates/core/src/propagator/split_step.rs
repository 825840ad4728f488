use num_complex::Complex64;

use crate::analytic::COVERAGE_SIGMAS;
use crate::error::{Error, Result};
use crate::primitives::{Grid, PhysicalParams, WaveFunction};
use crate::propagator::{moments, Spectral};

/// How far and in how many steps to propagate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationPlan {
    t_final: f64,
    n_steps: usize,
    grid: Grid,
    params: PhysicalParams,
}

impl PropagationPlan {
    pub fn new(t_final: f64, n_steps: usize, grid: Grid, params: PhysicalParams) -> Result<Self> {
        if n_steps == 0 {
            return Err(Error::InvalidArgument(
                "at least one step is required".into(),
            ));
        }
        if !t_final.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "final time {t_final} is not finite"
            )));
        }
        Ok(Self {
            t_final,
            n_steps,
            grid,
            params,
        })
    }

    /// `periods` oscillation periods at `steps_per_period` resolution.
    pub fn over_periods(
        periods: f64,
        steps_per_period: usize,
        grid: Grid,
        params: PhysicalParams,
    ) -> Result<Self> {
        let n_steps = (periods.abs() * steps_per_period as f64).round().max(1.0) as usize;
        Self::new(periods * params.period(), n_steps, grid, params)
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.n_steps as f64
    }

    /// Whether `ω·|dt| < 0.1`, the regime where the stated accuracy holds.
    pub fn is_accurate(&self) -> bool {
        self.params.omega() * self.dt().abs() < 0.1
    }
}

/// Strang-split integrator: half potential kick, full kinetic drift in
/// momentum space, half potential kick.
#[derive(Debug, Clone)]
pub struct SplitStepper {
    spectral: Spectral,
    half_potential: Vec<Complex64>,
    kinetic: Vec<Complex64>,
    state: WaveFunction,
    dt: f64,
    steps_taken: usize,
}

impl SplitStepper {
    /// Rejects initial states whose classical orbit, widened by six spreads,
    /// leaves the grid.
    pub fn new(psi0: WaveFunction, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt != 0.0) {
            return Err(Error::InvalidArgument(format!(
                "time step {dt} is unusable"
            )));
        }
        let grid = *psi0.grid();
        let params = *psi0.params();
        let spectral = Spectral::new(&grid)?;
        check_orbit_coverage(&psi0, &spectral)?;

        let hbar = params.hbar();
        let spring = 0.5 * params.mass() * params.omega() * params.omega();
        let half_potential = grid
            .points()
            .map(|x| Complex64::from_polar(1.0, -spring * x * x * dt / (2.0 * hbar)))
            .collect();
        let kinetic = spectral
            .wavenumbers()
            .iter()
            .map(|k| Complex64::from_polar(1.0, -hbar * k * k * dt / (2.0 * params.mass())))
            .collect();
        Ok(Self {
            spectral,
            half_potential,
            kinetic,
            state: psi0,
            dt,
            steps_taken: 0,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn time(&self) -> f64 {
        self.steps_taken as f64 * self.dt
    }

    pub fn steps_taken(&self) -> usize {
        self.steps_taken
    }

    pub fn state(&self) -> &WaveFunction {
        &self.state
    }

    pub fn into_state(self) -> WaveFunction {
        self.state
    }

    pub fn advance(&mut self, n_steps: usize) -> Result<()> {
        let fft = self.spectral.fft();
        for _ in 0..n_steps {
            let values = self.state.values_mut();
            for (v, f) in values.iter_mut().zip(&self.half_potential) {
                *v *= f;
            }
            fft.forward(values);
            for (v, f) in values.iter_mut().zip(&self.kinetic) {
                *v *= f;
            }
            fft.inverse(values);
            for (v, f) in values.iter_mut().zip(&self.half_potential) {
                *v *= f;
            }
            self.steps_taken += 1;
            if values
                .iter()
                .any(|v| !(v.re.is_finite() && v.im.is_finite()))
            {
                return Err(Error::NonFinite {
                    step: self.steps_taken,
                });
            }
        }
        Ok(())
    }
}

fn check_orbit_coverage(psi: &WaveFunction, spectral: &Spectral) -> Result<()> {
    let p = psi.params();
    let mw = p.mass() * p.omega();
    let m = moments(psi, spectral)?;
    let radius = m.x_mean.hypot(m.p_mean / mw);
    let spread = m.x_spread.max(m.p_spread / mw);
    let reach = radius + COVERAGE_SIGMAS * spread;
    psi.grid().require_coverage(-reach, reach)
}

/// `e^{−iHt/ħ}ψ₀` by `plan.n_steps()` Strang steps.
pub fn split_step_evolve(psi0: &WaveFunction, plan: &PropagationPlan) -> Result<WaveFunction> {
    if psi0.grid() != plan.grid() {
        return Err(Error::GridMismatch);
    }
    if psi0.params() != plan.params() {
        return Err(Error::InvalidArgument(
            "initial state and plan use different physical parameters".into(),
        ));
    }
    let mut stepper = SplitStepper::new(psi0.clone(), plan.dt())?;
    stepper.advance(plan.n_steps())?;
    Ok(stepper.into_state())
}
