use super::Qds;

/// Size summary of a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QdsStats {
    pub layers: usize,
    pub per_layer: Vec<usize>,
    pub total: usize,
    pub delta_edges: usize,
    /// Smallest γ shift, the `s` of the membership cost bound.
    pub min_shift: Option<usize>,
    pub bottom_gammas: usize,
}

impl Qds {
    pub fn stats(&self) -> QdsStats {
        let gammas: Vec<_> = self.gamma_entries().map(|(_, g)| g).collect();
        QdsStats {
            layers: self.num_layers(),
            per_layer: (1..=self.num_layers()).map(|j| self.layer(j).len()).collect(),
            total: self.len(),
            delta_edges: self.delta_edges().count(),
            min_shift: gammas.iter().map(|g| g.shift).min(),
            bottom_gammas: gammas.iter().filter(|g| g.target.is_none()).count(),
        }
    }
}

/// Warnings for structures that are valid but outside what the shiftable-path
/// conditions can use: a shift of `m` leaves no room for the next window.
pub fn lint(s: &Qds) -> Vec<String> {
    s.gamma_entries()
        .filter(|(_, g)| g.shift >= s.num_layers())
        .map(|(q, g)| {
            format!(
                "gamma on {} has shift {} > m-1 = {}; no shiftable path uses it",
                s.name(q),
                g.shift,
                s.window()
            )
        })
        .collect()
}
