//! Incremental driver: stream blocks, maintain the current MAW set, emit
//! per-step outputs, and instrument the space contract.

use crate::error::Result;
use crate::maw_single::compute_maws_counted;
use crate::merge::merge_step;
use crate::text::{materialize, Alphabet, Block, Corpus, MawSet, MawWord};
use std::time::Instant;

/// Re-readable block storage. Implementations must allow reading any block
/// `1..=block_count()` repeatedly; the pipeline re-reads earlier blocks one
/// at a time during each merge step.
pub trait BlockSource {
    fn alphabet(&self) -> &Alphabet;
    fn block_count(&self) -> usize;
    /// Reads block `id` (1-based) into a fresh resident copy.
    fn read_block(&mut self, id: usize) -> Result<Block>;
}

/// Block source over an in-memory corpus; the stored corpus plays the role
/// of the disk.
pub struct InMemorySource {
    corpus: Corpus,
}

impl InMemorySource {
    pub fn new(corpus: Corpus) -> InMemorySource {
        InMemorySource { corpus }
    }
}

impl BlockSource for InMemorySource {
    fn alphabet(&self) -> &Alphabet {
        self.corpus.alphabet()
    }

    fn block_count(&self) -> usize {
        self.corpus.block_count()
    }

    fn read_block(&mut self, id: usize) -> Result<Block> {
        Ok(self.corpus.blocks()[id - 1].clone())
    }
}

/// Running tally of resident data, in elements: block bytes (blocks and
/// pair texts), index nodes (suffix tree nodes and automaton states), and
/// MAW-set entries (current set, tuples, reduced sets, candidates). The
/// peak is sampled whenever a component grows; short-lived structures
/// freed inside a callee are folded in via
/// [`SpaceMeter::note_transient_nodes`].
#[derive(Debug, Default, Clone)]
pub struct SpaceMeter {
    block_bytes: usize,
    tree_nodes: usize,
    set_elements: usize,
    peak: usize,
    step_peak: usize,
}

impl SpaceMeter {
    fn bump(&mut self) {
        let cur = self.current();
        self.peak = self.peak.max(cur);
        self.step_peak = self.step_peak.max(cur);
    }

    pub fn add_blocks(&mut self, n: usize) {
        self.block_bytes += n;
        self.bump();
    }

    pub fn sub_blocks(&mut self, n: usize) {
        self.block_bytes -= n;
    }

    pub fn add_nodes(&mut self, n: usize) {
        self.tree_nodes += n;
        self.bump();
    }

    pub fn sub_nodes(&mut self, n: usize) {
        self.tree_nodes -= n;
    }

    pub fn add_elements(&mut self, n: usize) {
        self.set_elements += n;
        self.bump();
    }

    pub fn sub_elements(&mut self, n: usize) {
        self.set_elements -= n;
    }

    /// Accounts for a structure that was alive inside a callee and is
    /// already freed: the peak covers it, the current level does not.
    pub fn note_transient_nodes(&mut self, n: usize) {
        let cur = self.current() + n;
        self.peak = self.peak.max(cur);
        self.step_peak = self.step_peak.max(cur);
    }

    pub fn current(&self) -> usize {
        self.block_bytes + self.tree_nodes + self.set_elements
    }

    pub fn peak(&self) -> usize {
        self.peak
    }

    fn begin_step(&mut self) {
        self.step_peak = self.current();
    }

    fn step_peak(&self) -> usize {
        self.step_peak
    }
}

/// Per-step summary: the emitted set's size and total length, wall time,
/// and the peak element count observed during the step.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub n: usize,
    pub set_size: usize,
    pub total_length: usize,
    pub wall_time_ms: f64,
    pub peak_elements: usize,
}

/// Driver state across steps: after step `N` completes, `current_set` is
/// exactly `M^ell` of `y1#...#yN`.
pub struct PipelineState<'a> {
    source: &'a mut dyn BlockSource,
    ell: usize,
    step: usize,
    current: MawSet,
    seen: [bool; 256],
    meter: SpaceMeter,
}

impl<'a> PipelineState<'a> {
    pub fn new(source: &'a mut dyn BlockSource, ell: usize) -> PipelineState<'a> {
        assert!(ell >= 1, "ell must be >= 1");
        PipelineState {
            source,
            ell,
            step: 0,
            current: MawSet::empty(),
            seen: [false; 256],
            meter: SpaceMeter::default(),
        }
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn current_set(&self) -> &MawSet {
        &self.current
    }

    /// Peak resident element estimate so far (blocks + nodes + set
    /// entries), the instrumented analogue of the space bound.
    pub fn peak_space_estimate(&self) -> usize {
        self.meter.peak()
    }

    /// Runs one step; returns its report, or `None` when all blocks are
    /// consumed.
    pub fn advance(&mut self) -> Result<Option<StepReport>> {
        let n = self.step + 1;
        if n > self.source.block_count() {
            return Ok(None);
        }
        self.meter.begin_step();
        let alphabet = self.source.alphabet().clone();
        let block = self.source.read_block(n)?;
        self.meter.add_blocks(block.len());
        let started = Instant::now();

        let merged = if n == 1 {
            let (out, states) = compute_maws_counted(&block, self.ell, &alphabet);
            self.meter.note_transient_nodes(states);
            let mut entries: Vec<(MawWord, _)> = Vec::with_capacity(out.tuples.len() + 4);
            for t in &out.tuples {
                entries.push((materialize(t, &block)?, Some(*t)));
            }
            for &c in &out.absent_letters {
                entries.push((MawWord::new(vec![c]), None));
            }
            MawSet::from_entries(entries)
        } else {
            merge_step(
                &self.current,
                &block,
                &mut *self.source,
                self.ell,
                &self.seen,
                &alphabet,
                &mut self.meter,
            )?
            .merged
        };

        let wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
        for &b in block.data() {
            self.seen[b as usize] = true;
        }
        self.meter.add_elements(merged.len());
        self.meter.sub_elements(self.current.len());
        self.meter.sub_blocks(block.len());
        self.current = merged;
        self.step = n;
        Ok(Some(StepReport {
            n,
            set_size: self.current.len(),
            total_length: self.current.total_length(),
            wall_time_ms,
            peak_elements: self.meter.step_peak(),
        }))
    }
}

/// Runs every step, handing `(N, set)` to the sink before the next step
/// starts, and returns the per-step reports.
pub fn run_with_source(
    source: &mut dyn BlockSource,
    ell: usize,
    sink: &mut dyn FnMut(usize, &MawSet) -> Result<()>,
) -> Result<Vec<StepReport>> {
    let mut state = PipelineState::new(source, ell);
    let mut reports = Vec::new();
    while let Some(report) = state.advance()? {
        sink(report.n, state.current_set())?;
        reports.push(report);
    }
    Ok(reports)
}

/// Convenience entry over an in-memory corpus.
pub fn run(
    corpus: &Corpus,
    ell: usize,
    sink: &mut dyn FnMut(usize, &MawSet) -> Result<()>,
) -> Result<Vec<StepReport>> {
    let mut source = InMemorySource::new(corpus.clone());
    run_with_source(&mut source, ell, sink)
}
