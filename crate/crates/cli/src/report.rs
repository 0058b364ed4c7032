//! Invariant reports: computed values for one model file, renderable as
//! aligned text or JSON.

use serde::Serialize;

use linkhom_core::theorem::TheoremVerdict;

#[derive(Clone, Debug, Serialize)]
pub struct TraceLine {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub sigma_plus: String,
    pub sigma_minus: String,
    pub plus_good: bool,
    pub minus_good: bool,
    pub pairable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(usize, usize)>>,
    pub omega_direct: u8,
    pub omega_predicted: u8,
    /// `"agrees"` or `"disagrees"`; present exactly when the file carries
    /// witnesses (and the hypothesis σ₋ = 0 holds, or the file would have
    /// been rejected).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceLine>>,
}

impl Report {
    /// 0 when the verdict agrees or there is no verdict; 1 on disagreement.
    pub fn exit_code(&self) -> i32 {
        match self.verdict.as_deref() {
            Some("disagrees") => 1,
            _ => 0,
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |label: &str, value: &str| {
            out.push_str(&format!("{label:<17}{value}\n"));
        };
        line("sigma_plus:", &self.sigma_plus);
        line("sigma_minus:", &self.sigma_minus);
        line(
            "plus component:",
            if self.plus_good { "good" } else { "not good" },
        );
        line(
            "minus component:",
            if self.minus_good { "good" } else { "not good" },
        );
        match &self.pairs {
            Some(pairs) if pairs.is_empty() => line("pairing:", "(no double points)"),
            Some(pairs) => {
                let rendered = pairs
                    .iter()
                    .map(|(i, j)| format!("({i}, {j})"))
                    .collect::<Vec<_>>()
                    .join(" ");
                line("pairing:", &rendered);
            }
            None => line("pairing:", "not pairable"),
        }
        line("omega_direct:", &self.omega_direct.to_string());
        line("omega_predicted:", &self.omega_predicted.to_string());
        if let Some(verdict) = &self.verdict {
            line("verdict:", verdict);
        }
        if let Some(trace) = &self.trace {
            out.push_str("derivation trace:\n");
            for entry in trace {
                out.push_str(&format!(
                    "  {:<28}{}\n",
                    format!("{}:", entry.label),
                    entry.value
                ));
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("reports always serialize");
        out.push('\n');
        out
    }
}

/// Flatten a replay verdict into labelled trace lines.
pub fn trace_lines(verdict: &TheoremVerdict) -> Vec<TraceLine> {
    let mut lines = Vec::new();
    let mut push = |label: String, value: String| lines.push(TraceLine { label, value });
    let t = &verdict.trace;
    for (i, c) in t.c_plus.iter().enumerate() {
        push(format!("c_plus[{i}]"), c.to_string());
    }
    for (i, c) in t.c_minus.iter().enumerate() {
        push(format!("c_minus[{i}]"), c.to_string());
    }
    push("lambda(f,f) mod 2".into(), t.lambda_ff.to_string());
    push("basis coefficients".into(), t.theta.to_string());
    push("divisor".into(), t.divisor.to_string());
    push("quotient".into(), t.quotient.to_string());
    push(
        "quotient, direct summation".into(),
        t.quotient_direct.to_string(),
    );
    push("phi(quotient)".into(), t.phi_quotient.to_string());
    push("sum a_n r_n(1)".into(), t.weighted_r_sum.to_string());
    push("even-n u(1) sum".into(), t.even_u_sum.to_string());
    push("omega_direct".into(), verdict.omega_direct.to_string());
    push(
        "omega_predicted".into(),
        verdict.omega_predicted.to_string(),
    );
    lines
}
