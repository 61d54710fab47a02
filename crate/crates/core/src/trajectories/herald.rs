// Copyright 2026 The bellherald Authors
// SPDX-License-Identifier: Apache-2.0

//! Classification of left clicks into window births and deaths.

use super::{is_ground, Channel, JumpEvent};

/// How left clicks are classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeraldRule {
    /// Odd clicks within a `|gg> -> ... -> |gg>` cycle open a window and
    /// even clicks close it. A click that lands in `|gg>` ends the cycle.
    Parity,
    /// A click opens a window when the post-click `|+i>` population is at
    /// least one half. Used when clicks can go undetected.
    PostState,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeraldEvent {
    pub time: f64,
    /// True for clicks classified as window births.
    pub birth: bool,
    /// `<+i|rho|+i>` after the click.
    pub fidelity_plus_i: f64,
    /// `<gg|rho|gg>` after the click.
    pub fidelity_gg: f64,
    pub entanglement: f64,
}

/// A heralded window of `|+i>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub birth: f64,
    /// `None` when the run ended inside the window.
    pub death: Option<f64>,
}

impl Window {
    /// Duration, or the time spent up to `t_end` for an open window.
    pub fn exposure(&self, t_end: f64) -> f64 {
        self.death.unwrap_or(t_end) - self.birth
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct HeraldAnalysis {
    pub events: Vec<HeraldEvent>,
    pub windows: Vec<Window>,
}

impl HeraldAnalysis {
    pub fn closed_windows(&self) -> usize {
        self.windows.iter().filter(|w| w.death.is_some()).count()
    }

    /// Total time inside windows, counting windows still open at `t_end`.
    pub fn exposure(&self, t_end: f64) -> f64 {
        self.windows.iter().map(|w| w.exposure(t_end)).sum()
    }

    /// Mean window duration for exponential lifetimes with right
    /// censoring: total exposure over the number of closed windows.
    pub fn mean_duration(&self, t_end: f64) -> Option<f64> {
        let closed = self.closed_windows();
        (closed > 0).then(|| self.exposure(t_end) / closed as f64)
    }

    pub fn births(&self) -> impl Iterator<Item = &HeraldEvent> {
        self.events.iter().filter(|e| e.birth)
    }

    pub fn merge(&mut self, other: HeraldAnalysis) {
        self.events.extend(other.events);
        self.windows.extend(other.windows);
    }
}

/// Online classifier, fed one left click at a time.
#[derive(Clone, Debug)]
pub struct HeraldTracker {
    rule: HeraldRule,
    parity: u32,
    open: Option<f64>,
    analysis: HeraldAnalysis,
}

impl HeraldTracker {
    pub fn new(rule: HeraldRule) -> Self {
        HeraldTracker {
            rule,
            parity: 0,
            open: None,
            analysis: HeraldAnalysis::default(),
        }
    }

    pub fn click(&mut self, time: f64, post_populations: &[f64; 4], entanglement: f64) {
        let fidelity_plus_i = post_populations[1];
        let birth = match self.rule {
            HeraldRule::Parity => self.parity.is_multiple_of(2),
            HeraldRule::PostState => fidelity_plus_i >= 0.5,
        };
        self.analysis.events.push(HeraldEvent {
            time,
            birth,
            fidelity_plus_i,
            fidelity_gg: post_populations[3],
            entanglement,
        });
        let landed_in_window = match self.rule {
            HeraldRule::Parity => birth && !is_ground(post_populations),
            HeraldRule::PostState => birth,
        };
        if let Some(start) = self.open.take() {
            self.analysis.windows.push(Window {
                birth: start,
                death: Some(time),
            });
        }
        if landed_in_window {
            self.open = Some(time);
        }
        self.parity = if is_ground(post_populations) {
            0
        } else {
            self.parity + 1
        };
    }

    /// Birth time of the window open after the last click, if any.
    pub fn open_since(&self) -> Option<f64> {
        self.open
    }

    pub fn finish(mut self) -> HeraldAnalysis {
        if let Some(start) = self.open.take() {
            self.analysis.windows.push(Window {
                birth: start,
                death: None,
            });
        }
        self.analysis
    }
}

/// Classifies the left clicks of a recorded trajectory.
pub fn analyze_heralds(events: &[JumpEvent], rule: HeraldRule) -> HeraldAnalysis {
    let mut tracker = HeraldTracker::new(rule);
    for e in events.iter().filter(|e| e.channel == Channel::Left) {
        tracker.click(e.time, &e.post_populations, e.post_entanglement);
    }
    tracker.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn click(t: f64, pops: [f64; 4]) -> JumpEvent {
        JumpEvent {
            time: t,
            channel: Channel::Left,
            pre_state_fidelity_plus_i: 0.0,
            post_populations: pops,
            post_entanglement: 0.0,
        }
    }

    const PLUS: [f64; 4] = [0.0, 1.0, 0.0, 0.0];
    const GROUND: [f64; 4] = [0.0, 0.0, 0.0, 1.0];

    #[test]
    fn parity_pairs_births_and_deaths() {
        let events = [
            click(1.0, PLUS),
            click(2.0, GROUND),
            click(5.0, PLUS),
            click(5.5, GROUND),
            click(9.0, PLUS),
        ];
        let a = analyze_heralds(&events, HeraldRule::Parity);
        assert_eq!(a.windows.len(), 3);
        assert_eq!(a.closed_windows(), 2);
        assert_eq!(a.births().count(), 3);
        // exposure 1 + 0.5 + 1 over two closed windows
        assert!((a.mean_duration(10.0).unwrap() - 1.25).abs() < 1e-12);
    }

    #[test]
    fn parity_resets_when_a_birth_lands_in_ground() {
        let events = [click(1.0, GROUND), click(2.0, PLUS), click(3.0, GROUND)];
        let a = analyze_heralds(&events, HeraldRule::Parity);
        let births: Vec<f64> = a.births().map(|e| e.time).collect();
        assert_eq!(births, vec![1.0, 2.0]);
        assert_eq!(
            a.windows,
            vec![Window {
                birth: 2.0,
                death: Some(3.0)
            }]
        );
    }

    #[test]
    fn post_state_rule_uses_populations() {
        let events = [
            click(1.0, [0.0, 0.9, 0.0, 0.1]),
            click(2.0, [0.0, 0.3, 0.0, 0.7]),
        ];
        let a = analyze_heralds(&events, HeraldRule::PostState);
        assert_eq!(a.births().count(), 1);
        assert_eq!(a.closed_windows(), 1);
    }
}
