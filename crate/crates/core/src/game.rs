//! Finite two-player Bayesian games and their pure equilibria.
//!
//! A game is a list of probability-weighted atoms. Each atom names the
//! information set each firm is in, the training component each firm holds,
//! and the true label. A pure strategy maps a firm's information sets to
//! actions.
//!
//! Equilibria are enumerated per common-knowledge cell: two information sets
//! are linked when some positive-probability atom contains both, and the
//! connected components of that graph are independent subgames. Within a cell
//! we enumerate the strategies of the firm with fewer information sets and
//! solve for the other firm's best responses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::utility::{expost_utility, Action, Label, Player, UtilityParams, DEFAULT_TOLERANCE};

/// Atom probabilities must sum to one within this tolerance.
pub const MASS_TOL: f64 = 1e-12;

/// One outcome of the game.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameAtom {
    pub prob: f64,
    pub infoset1: String,
    pub infoset2: String,
    pub label: Label,
    pub train1: String,
    pub train2: String,
}

impl GameAtom {
    pub fn infoset(&self, player: Player) -> &str {
        match player {
            Player::One => &self.infoset1,
            Player::Two => &self.infoset2,
        }
    }

    pub fn train(&self, player: Player) -> &str {
        match player {
            Player::One => &self.train1,
            Player::Two => &self.train2,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct RawGame {
    atoms: Vec<GameAtom>,
    utility: UtilityParams,
}

/// Per-player lookup tables built once at construction.
#[derive(Debug, Clone, Default, PartialEq)]
struct PlayerIndex {
    /// Sorted infoset names.
    infosets: Vec<String>,
    /// Total probability of each infoset.
    mass: Vec<f64>,
    /// Sorted training component names.
    trains: Vec<String>,
    train_mass: Vec<f64>,
}

/// A finite Bayesian game between the two firms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGame")]
pub struct BayesianGame {
    atoms: Vec<GameAtom>,
    utility: UtilityParams,
    #[serde(skip)]
    index: [PlayerIndex; 2],
    /// `[infoset index of firm 1, infoset index of firm 2]` per atom.
    #[serde(skip)]
    atom_sets: Vec<[usize; 2]>,
    #[serde(skip)]
    atom_trains: Vec<[usize; 2]>,
}

impl TryFrom<RawGame> for BayesianGame {
    type Error = Error;
    fn try_from(raw: RawGame) -> Result<Self> {
        BayesianGame::new(raw.atoms, raw.utility)
    }
}

impl BayesianGame {
    /// Validates probabilities and that every infoset sits inside a single
    /// training component of its owner.
    pub fn new(atoms: Vec<GameAtom>, utility: UtilityParams) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidGame("game has no atoms".into()));
        }
        let mut total = 0.0;
        for a in &atoms {
            if !a.prob.is_finite() || a.prob < 0.0 {
                return Err(Error::InvalidGame(format!("atom probability {} is negative", a.prob)));
            }
            total += a.prob;
        }
        if (total - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidGame(format!("atom probabilities sum to {total}, not 1")));
        }

        let mut index: [PlayerIndex; 2] = Default::default();
        for p in Player::BOTH {
            let idx = &mut index[p.index()];
            idx.infosets = atoms.iter().map(|a| a.infoset(p).to_string()).collect();
            idx.infosets.sort();
            idx.infosets.dedup();
            idx.trains = atoms.iter().map(|a| a.train(p).to_string()).collect();
            idx.trains.sort();
            idx.trains.dedup();
            idx.mass = vec![0.0; idx.infosets.len()];
            idx.train_mass = vec![0.0; idx.trains.len()];
        }

        let mut atom_sets = Vec::with_capacity(atoms.len());
        let mut atom_trains = Vec::with_capacity(atoms.len());
        let mut owner: [Vec<Option<usize>>; 2] = [
            vec![None; index[0].infosets.len()],
            vec![None; index[1].infosets.len()],
        ];
        for a in &atoms {
            let mut sets = [0; 2];
            let mut trains = [0; 2];
            for p in Player::BOTH {
                let i = p.index();
                let s = index[i].infosets.binary_search_by(|n| n.as_str().cmp(a.infoset(p))).unwrap();
                let w = index[i].trains.binary_search_by(|n| n.as_str().cmp(a.train(p))).unwrap();
                match owner[i][s] {
                    Some(prev) if prev != w => {
                        return Err(Error::InvalidGame(format!(
                            "{p} infoset '{}' spans training components '{}' and '{}'",
                            a.infoset(p),
                            index[i].trains[prev],
                            a.train(p)
                        )))
                    }
                    _ => owner[i][s] = Some(w),
                }
                index[i].mass[s] += a.prob;
                index[i].train_mass[w] += a.prob;
                sets[i] = s;
                trains[i] = w;
            }
            atom_sets.push(sets);
            atom_trains.push(trains);
        }

        Ok(BayesianGame {
            atoms,
            utility,
            index,
            atom_sets,
            atom_trains,
        })
    }

    pub fn atoms(&self) -> &[GameAtom] {
        &self.atoms
    }

    pub fn utility(&self) -> &UtilityParams {
        &self.utility
    }

    /// Sorted infoset names of `player`, including zero-mass ones.
    pub fn infosets(&self, player: Player) -> &[String] {
        &self.index[player.index()].infosets
    }

    /// Sorted training component names of `player`.
    pub fn train_components(&self, player: Player) -> &[String] {
        &self.index[player.index()].trains
    }

    pub fn infoset_mass(&self, player: Player, infoset: &str) -> f64 {
        self.infoset_index(player, infoset)
            .map(|i| self.index[player.index()].mass[i])
            .unwrap_or(0.0)
    }

    pub fn train_mass(&self, player: Player, train: &str) -> f64 {
        let idx = &self.index[player.index()];
        idx.trains
            .binary_search_by(|n| n.as_str().cmp(train))
            .map(|i| idx.train_mass[i])
            .unwrap_or(0.0)
    }

    /// Infosets that carry positive probability.
    pub fn positive_infosets(&self, player: Player) -> Vec<&str> {
        let idx = &self.index[player.index()];
        idx.infosets
            .iter()
            .zip(&idx.mass)
            .filter(|(_, &m)| m > 0.0)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    /// Training component pairs `(w1, w2)` that occur with positive probability.
    pub fn train_pairs(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = self
            .atoms
            .iter()
            .filter(|a| a.prob > 0.0)
            .map(|a| (a.train1.clone(), a.train2.clone()))
            .collect();
        pairs.sort();
        pairs.dedup();
        pairs
    }

    fn infoset_index(&self, player: Player, infoset: &str) -> Option<usize> {
        self.index[player.index()]
            .infosets
            .binary_search_by(|n| n.as_str().cmp(infoset))
            .ok()
    }

    /// Dense action table for `strategy`, aligned with `infosets(player)`.
    /// Infosets missing from the strategy are `None`.
    fn dense(&self, player: Player, strategy: &PureStrategy) -> Vec<Option<Action>> {
        self.infosets(player)
            .iter()
            .map(|n| strategy.choice.get(n).copied())
            .collect()
    }

    fn require_action(&self, player: Player, table: &[Option<Action>], set: usize) -> Result<Action> {
        table[set].ok_or_else(|| {
            Error::InvalidGame(format!(
                "strategy of {player} has no action at infoset '{}'",
                self.infosets(player)[set]
            ))
        })
    }

    /// `E[u_player(action, t, s_other(σ_other)) | infoset]`.
    pub fn conditional_utility(
        &self,
        player: Player,
        infoset: &str,
        action: Action,
        opp_strategy: &PureStrategy,
    ) -> Result<f64> {
        let i = player.index();
        let set = self
            .infoset_index(player, infoset)
            .filter(|&s| self.index[i].mass[s] > 0.0)
            .ok_or_else(|| Error::ZeroMass(format!("{player} infoset '{infoset}'")))?;
        let opp = player.other();
        let table = self.dense(opp, opp_strategy);
        let mut acc = 0.0;
        for (a, sets) in self.atoms.iter().zip(&self.atom_sets) {
            if sets[i] != set || a.prob == 0.0 {
                continue;
            }
            let other = self.require_action(opp, &table, sets[opp.index()])?;
            acc += a.prob * expost_utility(&self.utility, action, a.label, other);
        }
        Ok(acc / self.index[i].mass[set])
    }

    /// Every best response of `player` to `opp_strategy`.
    pub fn best_responses(&self, player: Player, opp_strategy: &PureStrategy) -> Result<BestResponses> {
        self.best_responses_tol(player, opp_strategy, DEFAULT_TOLERANCE)
    }

    pub fn best_responses_tol(
        &self,
        player: Player,
        opp_strategy: &PureStrategy,
        tol: f64,
    ) -> Result<BestResponses> {
        let mut options = BTreeMap::new();
        for (name, &mass) in self.infosets(player).iter().zip(&self.index[player.index()].mass) {
            let opts = if mass > 0.0 {
                let u0 = self.conditional_utility(player, name, Action::Zero, opp_strategy)?;
                let u1 = self.conditional_utility(player, name, Action::One, opp_strategy)?;
                tie_options(u0, u1, tol)
            } else {
                vec![Action::Zero, Action::One]
            };
            options.insert(name.clone(), opts);
        }
        Ok(BestResponses { options })
    }

    /// Expected utility of `player` under `profile`, conditioned on its
    /// training component `train`.
    pub fn interim_utility(&self, profile: &PureStrategyProfile, player: Player, train: &str) -> Result<f64> {
        let mass = self.train_mass(player, train);
        if mass <= 0.0 {
            return Err(Error::ZeroMass(format!("{player} training component '{train}'")));
        }
        let tables = self.tables(profile);
        let i = player.index();
        let mut acc = 0.0;
        for (k, a) in self.atoms.iter().enumerate() {
            if a.prob == 0.0 || self.index[i].trains[self.atom_trains[k][i]] != train {
                continue;
            }
            acc += a.prob * self.atom_payoff(k, player, &tables)?;
        }
        Ok(acc / mass)
    }

    /// Unconditional expected utility of `player` under `profile`.
    pub fn exante_utility(&self, profile: &PureStrategyProfile, player: Player) -> Result<f64> {
        let tables = self.tables(profile);
        let mut acc = 0.0;
        for (k, a) in self.atoms.iter().enumerate() {
            if a.prob > 0.0 {
                acc += a.prob * self.atom_payoff(k, player, &tables)?;
            }
        }
        Ok(acc)
    }

    /// Interim utility at every positive-mass training component.
    pub fn interim_table(&self, profile: &PureStrategyProfile, player: Player) -> Result<BTreeMap<String, f64>> {
        let mut out = BTreeMap::new();
        for w in self.train_components(player) {
            if self.train_mass(player, w) > 0.0 {
                out.insert(w.clone(), self.interim_utility(profile, player, w)?);
            }
        }
        Ok(out)
    }

    fn tables(&self, profile: &PureStrategyProfile) -> [Vec<Option<Action>>; 2] {
        [
            self.dense(Player::One, &profile.s1),
            self.dense(Player::Two, &profile.s2),
        ]
    }

    fn atom_payoff(&self, k: usize, player: Player, tables: &[Vec<Option<Action>>; 2]) -> Result<f64> {
        let sets = self.atom_sets[k];
        let mine = self.require_action(player, &tables[player.index()], sets[player.index()])?;
        let opp = player.other();
        let theirs = self.require_action(opp, &tables[opp.index()], sets[opp.index()])?;
        Ok(expost_utility(&self.utility, mine, self.atoms[k].label, theirs))
    }

    /// Whether `profile` is a pure equilibrium: no firm gains more than `tol`
    /// by switching its action at any positive-mass infoset.
    pub fn is_equilibrium(&self, profile: &PureStrategyProfile, tol: f64) -> Result<bool> {
        for p in Player::BOTH {
            let (own, opp) = match p {
                Player::One => (&profile.s1, &profile.s2),
                Player::Two => (&profile.s2, &profile.s1),
            };
            for name in self.positive_infosets(p) {
                let chosen = own.get(name).ok_or_else(|| {
                    Error::InvalidGame(format!("strategy of {p} has no action at infoset '{name}'"))
                })?;
                let u = self.conditional_utility(p, name, chosen, opp)?;
                let alt = self.conditional_utility(p, name, chosen.flip(), opp)?;
                if alt > u + tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every pure equilibrium, sorted; zero-mass infosets are reported as 0.
    pub fn enumerate_pure_equilibria(&self) -> Result<Vec<PureStrategyProfile>> {
        self.enumerate_with(&EnumerationLimits::default())
    }

    pub fn enumerate_with(&self, limits: &EnumerationLimits) -> Result<Vec<PureStrategyProfile>> {
        let cells = self.cells();
        let mut per_cell = Vec::with_capacity(cells.len());
        let mut total: usize = 1;
        for cell in &cells {
            let eqs = self.solve_cell(cell, limits)?;
            if eqs.is_empty() {
                return Ok(Vec::new());
            }
            total = total.saturating_mul(eqs.len());
            if total > limits.max_profiles {
                return Err(Error::Capacity(format!(
                    "more than {} equilibrium profiles",
                    limits.max_profiles
                )));
            }
            per_cell.push(eqs);
        }

        // mixed-radix walk over the per-cell choices
        let n = [self.infosets(Player::One).len(), self.infosets(Player::Two).len()];
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; per_cell.len()];
        loop {
            let mut acts = [vec![Action::Zero; n[0]], vec![Action::Zero; n[1]]];
            for (c, (cell, &d)) in cells.iter().zip(&digits).enumerate() {
                let chosen = &per_cell[c][d];
                for p in 0..2 {
                    for (slot, &set) in cell.sets[p].iter().enumerate() {
                        acts[p][set] = chosen[p][slot];
                    }
                }
            }
            out.push(PureStrategyProfile {
                s1: self.strategy_from(Player::One, &acts[0]),
                s2: self.strategy_from(Player::Two, &acts[1]),
            });
            let mut c = 0;
            loop {
                if c == digits.len() {
                    out.sort();
                    return Ok(out);
                }
                digits[c] += 1;
                if digits[c] < per_cell[c].len() {
                    break;
                }
                digits[c] = 0;
                c += 1;
            }
        }
    }

    fn strategy_from(&self, player: Player, acts: &[Action]) -> PureStrategy {
        PureStrategy {
            choice: self.infosets(player).iter().cloned().zip(acts.iter().copied()).collect(),
        }
    }

    /// Common-knowledge cells over positive-mass infosets.
    fn cells(&self) -> Vec<Cell> {
        let n1 = self.infosets(Player::One).len();
        let n2 = self.infosets(Player::Two).len();
        let mut uf = UnionFind::new(n1 + n2);
        for (a, sets) in self.atoms.iter().zip(&self.atom_sets) {
            if a.prob > 0.0 {
                uf.union(sets[0], n1 + sets[1]);
            }
        }
        let mut by_root: BTreeMap<usize, Cell> = BTreeMap::new();
        for p in Player::BOTH {
            let i = p.index();
            for (s, &m) in self.index[i].mass.iter().enumerate() {
                if m > 0.0 {
                    let root = uf.find(s + if i == 0 { 0 } else { n1 });
                    by_root.entry(root).or_default().sets[i].push(s);
                }
            }
        }
        for (k, (a, sets)) in self.atoms.iter().zip(&self.atom_sets).enumerate() {
            if a.prob > 0.0 {
                by_root.get_mut(&uf.find(sets[0])).unwrap().atoms.push(k);
            }
        }
        by_root.into_values().collect()
    }

    /// Equilibria of one cell as `[firm-1 actions, firm-2 actions]` aligned
    /// with `cell.sets`.
    fn solve_cell(&self, cell: &Cell, limits: &EnumerationLimits) -> Result<Vec<[Vec<Action>; 2]>> {
        for p in Player::BOTH {
            if cell.sets[p.index()].len() > limits.max_cell_infosets {
                return Err(Error::Capacity(format!(
                    "{p} has {} infosets in one common-knowledge cell (limit {})",
                    cell.sets[p.index()].len(),
                    limits.max_cell_infosets
                )));
            }
        }
        let local = LocalCell::new(self, cell);
        let driver = if cell.sets[1].len() < cell.sets[0].len() { 1 } else { 0 };
        let follower = 1 - driver;
        let nd = cell.sets[driver].len();
        let mut found = Vec::new();
        for bits in 0u32..(1u32 << nd) {
            let drive: Vec<Action> = (0..nd).map(|k| Action::from_bool(bits >> k & 1 == 1)).collect();
            let options = local.best_options(follower, &drive, limits.tol);
            let mut count: usize = 1;
            for o in &options {
                count = count.saturating_mul(o.len());
            }
            if count > limits.max_profiles {
                return Err(Error::Capacity(format!(
                    "more than {} best responses in one cell",
                    limits.max_profiles
                )));
            }
            for follow in product(&options) {
                if local.is_best_response(driver, &drive, &follow, limits.tol) {
                    let mut pair = [Vec::new(), Vec::new()];
                    pair[driver] = drive.clone();
                    pair[follower] = follow;
                    found.push(pair);
                }
            }
        }
        Ok(found)
    }
}

/// Bounds on the decomposed enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnumerationLimits {
    /// Most infosets a single player may hold in one cell.
    pub max_cell_infosets: usize,
    /// Most equilibrium profiles reported for the whole game.
    pub max_profiles: usize,
    pub tol: f64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_cell_infosets: 16,
            max_profiles: 1 << 16,
            tol: DEFAULT_TOLERANCE,
        }
    }
}

/// Actions that maximize a two-action payoff, with ties within `tol`.
fn tie_options(u0: f64, u1: f64, tol: f64) -> Vec<Action> {
    if (u0 - u1).abs() <= tol {
        vec![Action::Zero, Action::One]
    } else if u1 > u0 {
        vec![Action::One]
    } else {
        vec![Action::Zero]
    }
}

fn product(options: &[Vec<Action>]) -> Vec<Vec<Action>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&a| {
                    let mut v = prefix.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

#[derive(Debug, Default)]
struct Cell {
    /// Global infoset indices per player.
    sets: [Vec<usize>; 2],
    atoms: Vec<usize>,
}

/// A cell with infosets renumbered locally.
struct LocalCell {
    /// `(prob, [local set 1, local set 2], label)`.
    atoms: Vec<(f64, [usize; 2], Label)>,
    mass: [Vec<f64>; 2],
    utility: UtilityParams,
}

impl LocalCell {
    fn new(game: &BayesianGame, cell: &Cell) -> Self {
        let local = |p: usize, global: usize| cell.sets[p].binary_search(&global).unwrap();
        let mut mass = [vec![0.0; cell.sets[0].len()], vec![0.0; cell.sets[1].len()]];
        let atoms = cell
            .atoms
            .iter()
            .map(|&k| {
                let g = game.atom_sets[k];
                let s = [local(0, g[0]), local(1, g[1])];
                let prob = game.atoms[k].prob;
                mass[0][s[0]] += prob;
                mass[1][s[1]] += prob;
                (prob, s, game.atoms[k].label)
            })
            .collect();
        LocalCell {
            atoms,
            mass,
            utility: game.utility,
        }
    }

    /// Conditional utilities `[u(0), u(1)]` of player `p` per local infoset.
    fn values(&self, p: usize, opp_acts: &[Action]) -> Vec<[f64; 2]> {
        let mut v = vec![[0.0; 2]; self.mass[p].len()];
        for &(prob, s, t) in &self.atoms {
            let other = opp_acts[s[1 - p]];
            for a in Action::BOTH {
                v[s[p]][a.as_u8() as usize] += prob * expost_utility(&self.utility, a, t, other);
            }
        }
        for (row, &m) in v.iter_mut().zip(&self.mass[p]) {
            row[0] /= m;
            row[1] /= m;
        }
        v
    }

    fn best_options(&self, p: usize, opp_acts: &[Action], tol: f64) -> Vec<Vec<Action>> {
        self.values(p, opp_acts)
            .into_iter()
            .map(|[u0, u1]| tie_options(u0, u1, tol))
            .collect()
    }

    fn is_best_response(&self, p: usize, own: &[Action], opp_acts: &[Action], tol: f64) -> bool {
        self.values(p, opp_acts).iter().zip(own).all(|(u, &a)| {
            let i = a.as_u8() as usize;
            u[1 - i] <= u[i] + tol
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A firm's action at each of its information sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PureStrategy {
    pub choice: BTreeMap<String, Action>,
}

impl PureStrategy {
    pub fn new<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Action)>,
        S: Into<String>,
    {
        PureStrategy {
            choice: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect(),
        }
    }

    /// Same action everywhere in `infosets`.
    pub fn constant<S: AsRef<str>>(infosets: &[S], action: Action) -> Self {
        Self::new(infosets.iter().map(|s| (s.as_ref().to_string(), action)))
    }

    pub fn get(&self, infoset: &str) -> Option<Action> {
        self.choice.get(infoset).copied()
    }

    pub fn is_constant(&self, action: Action) -> bool {
        self.choice.values().all(|&a| a == action)
    }
}

impl fmt::Display for PureStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.choice.iter().map(|(k, a)| format!("{k}→{a}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct PureStrategyProfile {
    pub s1: PureStrategy,
    pub s2: PureStrategy,
}

impl PureStrategyProfile {
    pub fn strategy(&self, player: Player) -> &PureStrategy {
        match player {
            Player::One => &self.s1,
            Player::Two => &self.s2,
        }
    }
}

impl fmt::Display for PureStrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "firm 1 {}, firm 2 {}", self.s1, self.s2)
    }
}

/// The best-response set: a product of per-infoset action options.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestResponses {
    pub options: BTreeMap<String, Vec<Action>>,
}

impl BestResponses {
    pub fn contains(&self, s: &PureStrategy) -> bool {
        self.options.len() == s.choice.len()
            && self
                .options
                .iter()
                .all(|(k, opts)| s.get(k).is_some_and(|a| opts.contains(&a)))
    }

    pub fn count(&self) -> usize {
        self.options.values().map(Vec::len).product()
    }

    /// All strategies in the set, in sorted order.
    pub fn strategies(&self) -> Vec<PureStrategy> {
        let keys: Vec<&String> = self.options.keys().collect();
        let opts: Vec<Vec<Action>> = self.options.values().cloned().collect();
        let mut out: Vec<PureStrategy> = product(&opts)
            .into_iter()
            .map(|acts| PureStrategy::new(keys.iter().map(|k| k.as_str()).zip(acts)))
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn atom(prob: f64, i1: &str, i2: &str, t: u8) -> GameAtom {
        GameAtom {
            prob,
            infoset1: i1.into(),
            infoset2: i2.into(),
            label: Label::try_from(t).unwrap(),
            train1: "w".into(),
            train2: "w".into(),
        }
    }

    fn sa() -> UtilityParams {
        UtilityParams::significant_action(1.0, 1.0).unwrap()
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(BayesianGame::new(vec![atom(0.5, "A", "a", 1)], sa()).is_err());
        assert!(BayesianGame::new(vec![atom(1.5, "A", "a", 1), atom(-0.5, "B", "b", 0)], sa()).is_err());
        assert!(BayesianGame::new(vec![], sa()).is_err());
    }

    #[test]
    fn rejects_infoset_spanning_components() {
        let mut b = atom(0.5, "A", "a", 1);
        b.train1 = "other".into();
        assert!(matches!(
            BayesianGame::new(vec![atom(0.5, "A", "a", 1), b], sa()),
            Err(Error::InvalidGame(_))
        ));
    }

    #[test]
    fn single_atom_matching_game() {
        let g = BayesianGame::new(vec![atom(1.0, "A", "a", 1)], UtilityParams::matching_recommendations()).unwrap();
        let eqs = g.enumerate_pure_equilibria().unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].s1.get("A"), Some(Action::One));
        assert_eq!(eqs[0].s2.get("a"), Some(Action::One));
    }

    #[test]
    fn strictly_dominant_action() {
        let g = BayesianGame::new(
            vec![atom(0.5, "A", "a", 1), atom(0.5, "B", "a", 1)],
            UtilityParams::matching_recommendations(),
        )
        .unwrap();
        let br = g.best_responses(Player::One, &PureStrategy::new([("a", Action::One)])).unwrap();
        assert_eq!(br.count(), 1);
        assert!(br.strategies()[0].is_constant(Action::One));
    }

    #[test]
    fn exact_tie_keeps_both_actions() {
        let g = BayesianGame::new(vec![atom(0.5, "A", "a", 1), atom(0.5, "A", "a", 0)], sa()).unwrap();
        let br = g.best_responses(Player::One, &PureStrategy::new([("a", Action::Zero)])).unwrap();
        assert_eq!(br.options["A"], vec![Action::Zero, Action::One]);
        assert_eq!(br.count(), 2);
    }

    #[test]
    fn zero_mass_infosets_reported_as_zero() {
        let g = BayesianGame::new(
            vec![atom(1.0, "A", "a", 1), atom(0.0, "B", "b", 1)],
            UtilityParams::matching_recommendations(),
        )
        .unwrap();
        let eqs = g.enumerate_pure_equilibria().unwrap();
        assert_eq!(eqs.len(), 1);
        assert_eq!(eqs[0].s1.get("B"), Some(Action::Zero));
        assert!(matches!(
            g.conditional_utility(Player::One, "B", Action::One, &eqs[0].s2),
            Err(Error::ZeroMass(_))
        ));
        let br = g.best_responses(Player::Two, &eqs[0].s1).unwrap();
        assert_eq!(br.options["b"].len(), 2);
    }

    #[test]
    fn capacity_limit_enforced() {
        let atoms: Vec<GameAtom> = (0..4).map(|k| atom(0.25, &format!("X{k}"), "x", 1)).collect();
        let g = BayesianGame::new(atoms, sa()).unwrap();
        let limits = EnumerationLimits {
            max_cell_infosets: 3,
            ..Default::default()
        };
        assert!(matches!(g.enumerate_with(&limits), Err(Error::Capacity(_))));
        assert!(g.enumerate_pure_equilibria().is_ok());
    }

    #[test]
    fn interim_and_exante_agree() {
        let mut atoms = vec![atom(0.3, "A", "a", 1), atom(0.2, "B", "b", 0)];
        let mut c = atom(0.5, "C", "a", 0);
        c.train1 = "v".into();
        atoms.push(c);
        let g = BayesianGame::new(atoms, sa()).unwrap();
        for prof in g.enumerate_pure_equilibria().unwrap() {
            for p in Player::BOTH {
                let table = g.interim_table(&prof, p).unwrap();
                let mix: f64 = table.iter().map(|(w, u)| g.train_mass(p, w) * u).sum();
                assert_abs_diff_eq!(mix, g.exante_utility(&prof, p).unwrap(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let g = BayesianGame::new(vec![atom(0.5, "A", "a", 1), atom(0.5, "B", "b", 0)], sa()).unwrap();
        let js = serde_json::to_string(&g).unwrap();
        let back: BayesianGame = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
        let eq = &g.enumerate_pure_equilibria().unwrap()[0];
        let js = serde_json::to_string(eq).unwrap();
        assert_eq!(js, r#"{"s1":{"A":1,"B":0},"s2":{"a":1,"b":0}}"#);
    }
}
