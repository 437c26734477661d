/**
 * UI controller: one API call per user action, server snapshots as the
 * only source of truth.
 *
 * No optimistic updates: local state changes only when the server
 * answers.  A rejected move leaves the recorded history untouched and
 * surfaces the server's reason verbatim, so the board can never drift
 * from the session.  One action may be in flight at a time.
 */

import { ApiError, SessionApi } from "./api.js";
import { initialForm, render, type Actions, type FormState, type UiState } from "./render.js";
import type { Snapshot } from "./types.js";

export class Controller implements Actions {
  state: UiState = {
    phase: "form",
    form: initialForm(),
    history: [],
    viewIndex: 0,
    selection: null,
    busy: false,
    error: null,
  };

  constructor(
    private readonly root: HTMLElement,
    private readonly api: SessionApi,
  ) {
    this.repaint();
  }

  /** Latest authoritative snapshot, or null before a session exists. */
  get snapshot(): Snapshot | null {
    return this.state.history[this.state.history.length - 1] ?? null;
  }

  private repaint(): void {
    render(this.root, this.state, this);
  }

  /**
   * Run exactly one API call under the in-flight lock; apply its result
   * only on success.  ApiError becomes the inline error message.
   */
  private async run<T>(
    call: () => Promise<T>,
    apply: (value: T) => void,
  ): Promise<void> {
    if (this.state.busy) return;
    this.state.busy = true;
    this.state.error = null;
    this.repaint();
    try {
      apply(await call());
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.error = err.reason;
      } else {
        this.state.error = String(err);
      }
    } finally {
      this.state.busy = false;
      this.repaint();
    }
  }

  private accept(snap: Snapshot): void {
    this.state.history.push(snap);
    this.state.viewIndex = this.state.history.length - 1;
    this.state.selection = null;
  }

  // ------------------------------------------------------------------
  // Actions
  // ------------------------------------------------------------------

  setForm(patch: Partial<FormState>): void {
    this.state.form = { ...this.state.form, ...patch };
    this.repaint();
  }

  async newGame(): Promise<void> {
    const f = this.state.form;
    await this.run(
      () =>
        this.api.createSession({
          target: f.target,
          human_role: f.role,
          engine_strategy: f.strategy,
          q: f.q,
        }),
      (snap) => {
        this.state.phase = "playing";
        this.state.history = [snap];
        this.state.viewIndex = 0;
      },
    );
  }

  /**
   * Colour the pending edge.  Deliberately unguarded: the server decides
   * legality, the client only reconciles.
   */
  async colour(c: number): Promise<void> {
    const snap = this.snapshot;
    if (!snap) return;
    await this.run(
      () => this.api.colour(snap.id, c),
      (next) => this.accept(next),
    );
  }

  /** Draw an edge as Builder.  Equally unguarded; see `colour`. */
  async drawEdge(u: number, v: number): Promise<void> {
    const snap = this.snapshot;
    if (!snap) return;
    await this.run(
      () => this.api.draw(snap.id, u, v),
      (next) => this.accept(next),
    );
  }

  async vertexClick(v: number): Promise<void> {
    const sel = this.state.selection;
    if (sel === null) {
      this.state.selection = v;
      this.repaint();
      return;
    }
    if (sel === v) {
      this.state.selection = null;
      this.repaint();
      return;
    }
    await this.drawEdge(sel, v);
  }

  async newVertexEdge(): Promise<void> {
    const snap = this.snapshot;
    if (!snap) return;
    if (snap.state.n === 0) {
      // empty board: the first edge must create both endpoints
      await this.drawEdge(0, 1);
      return;
    }
    const sel = this.state.selection;
    if (sel === null) return;
    await this.drawEdge(sel, snap.state.n);
  }

  scrub(k: number): void {
    const last = this.state.history.length - 1;
    this.state.viewIndex = Math.max(0, Math.min(k, last));
    this.repaint();
  }

  async reset(): Promise<void> {
    const snap = this.snapshot;
    if (snap) {
      await this.run(
        () => this.api.deleteSession(snap.id),
        () => undefined,
      );
    }
    this.state = {
      phase: "form",
      form: this.state.form,
      history: [],
      viewIndex: 0,
      selection: null,
      busy: false,
      error: null,
    };
    this.repaint();
  }
}
