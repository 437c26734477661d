/**
 * DOM rendering as a pure function of UI state.
 *
 * `render` rebuilds the app subtree from scratch on every call, so equal
 * states produce byte-identical markup (tested).  All interactivity is
 * delegated to the `Actions` callbacks; nothing here mutates state.
 */

import { edgeStroke, HIGHLIGHT_RING, needsLabel, VERTEX_FILL } from "./palette.js";
import type { Role, Snapshot } from "./types.js";
import { buildViewModel } from "./viewmodel.js";

export interface FormState {
  target: string;
  role: Role;
  strategy: string;
  q: number;
}

export interface UiState {
  phase: "form" | "playing";
  form: FormState;
  history: Snapshot[];
  viewIndex: number;
  selection: number | null;
  busy: boolean;
  error: string | null;
}

export interface Actions {
  newGame(): void;
  setForm(patch: Partial<FormState>): void;
  colour(c: number): void;
  vertexClick(v: number): void;
  newVertexEdge(): void;
  scrub(k: number): void;
  reset(): void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

export function initialForm(): FormState {
  return { target: "K3", role: "painter", strategy: "chase:t=3", q: 2 };
}

export function render(root: HTMLElement, state: UiState, actions: Actions): void {
  root.textContent = "";
  root.appendChild(
    state.phase === "form"
      ? renderForm(state, actions)
      : renderGame(state, actions),
  );
}

// ======================================================================
// New-game form
// ======================================================================

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderForm(state: UiState, actions: Actions): HTMLElement {
  const form = el("div", { "data-testid": "new-game-form", class: "form" });
  form.appendChild(el("h1", {}, "Builder / Painter"));

  const fields: [string, string, keyof FormState][] = [
    ["target", "Target (K3, P5, K3,3)", "target"],
    ["strategy", "Engine strategy", "strategy"],
  ];
  for (const [id, label, key] of fields) {
    const row = el("label", { class: "row" }, label + " ");
    const input = el("input", {
      "data-testid": `form-${id}`,
      value: String(state.form[key]),
    });
    input.addEventListener("change", () =>
      actions.setForm({ [key]: input.value } as Partial<FormState>),
    );
    row.appendChild(input);
    form.appendChild(row);
  }

  const roleRow = el("label", { class: "row" }, "Your role ");
  const role = el("select", { "data-testid": "form-role" });
  for (const r of ["painter", "builder"]) {
    const opt = el("option", { value: r }, r);
    if (r === state.form.role) opt.setAttribute("selected", "");
    role.appendChild(opt);
  }
  role.addEventListener("change", () =>
    actions.setForm({ role: role.value as Role }),
  );
  roleRow.appendChild(role);
  form.appendChild(roleRow);

  const qRow = el("label", { class: "row" }, "Colours q ");
  const q = el("input", {
    "data-testid": "form-q",
    type: "number",
    min: "2",
    value: String(state.form.q),
  });
  q.addEventListener("change", () => actions.setForm({ q: Number(q.value) }));
  qRow.appendChild(q);
  form.appendChild(qRow);

  if (state.error !== null) {
    form.appendChild(el("p", { "data-testid": "error", class: "error" }, state.error));
  }
  const start = el("button", { "data-testid": "start" }, "Start game");
  if (state.busy) start.setAttribute("disabled", "");
  start.addEventListener("click", () => actions.newGame());
  form.appendChild(start);
  return form;
}

// ======================================================================
// Game screen
// ======================================================================

function renderGame(state: UiState, actions: Actions): HTMLElement {
  const snap = state.history[state.viewIndex];
  if (!snap) return el("div", {}, "no snapshot");
  const live = state.viewIndex === state.history.length - 1;
  const vm = buildViewModel(snap);

  const wrap = el("div", { class: "game" });
  wrap.appendChild(
    el(
      "p",
      { "data-testid": "banner", class: "banner" },
      state.busy ? "Waiting for the server…" : vm.banner,
    ),
  );
  if (state.error !== null) {
    wrap.appendChild(el("p", { "data-testid": "error", class: "error" }, state.error));
  }
  if (!live) {
    wrap.appendChild(
      el(
        "p",
        { "data-testid": "scrub-note", class: "note" },
        `Viewing move ${state.viewIndex} of ${state.history.length - 1} — scrub right to return to live play`,
      ),
    );
  }

  wrap.appendChild(renderBoard(snap, vm, state, actions, live));
  wrap.appendChild(renderControls(snap, state, actions, live));
  wrap.appendChild(renderThreats(vm));
  wrap.appendChild(renderScrubber(state, actions));
  wrap.appendChild(renderLog(vm));
  if (vm.finished && live) wrap.appendChild(renderEndScreen(snap, vm, actions));
  return wrap;
}

function renderBoard(
  snap: Snapshot,
  vm: ReturnType<typeof buildViewModel>,
  state: UiState,
  actions: Actions,
  live: boolean,
): SVGSVGElement {
  const svg = document.createElementNS(SVG_NS, "svg");
  svg.setAttribute("data-testid", "board");
  svg.setAttribute("viewBox", "0 0 100 100");
  svg.setAttribute("class", "board");

  const pos = new Map(vm.vertices.map((v) => [v.id, v]));
  for (const e of vm.edges) {
    const a = pos.get(e.u)!;
    const b = pos.get(e.v)!;
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(a.x));
    line.setAttribute("y1", String(a.y));
    line.setAttribute("x2", String(b.x));
    line.setAttribute("y2", String(b.y));
    line.setAttribute("stroke", edgeStroke(e.color));
    line.setAttribute("stroke-width", e.highlight ? "2.4" : "1.1");
    const classes = ["edge"];
    if (e.pending) {
      classes.push("pending", "pulse");
      line.setAttribute("stroke-dasharray", "3 2");
    }
    if (e.highlight) classes.push("win-edge");
    line.setAttribute("class", classes.join(" "));
    svg.appendChild(line);
    if (e.color > 0 && needsLabel(e.color)) {
      const label = document.createElementNS(SVG_NS, "text");
      label.setAttribute("x", String((a.x + b.x) / 2));
      label.setAttribute("y", String((a.y + b.y) / 2));
      label.setAttribute("class", "edge-label");
      label.textContent = String(e.color);
      svg.appendChild(label);
    }
  }

  const builderTurn =
    live && snap.human_role === "builder" && snap.turn === "builder" && !state.busy;
  for (const v of vm.vertices) {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(v.x));
    circle.setAttribute("cy", String(v.y));
    circle.setAttribute("r", "2.6");
    circle.setAttribute("fill", VERTEX_FILL);
    circle.setAttribute("data-vertex", String(v.id));
    const classes = ["vertex"];
    if (v.highlight) {
      classes.push("mono-member");
      circle.setAttribute("stroke", HIGHLIGHT_RING);
      circle.setAttribute("stroke-width", "1.4");
    }
    if (state.selection === v.id) classes.push("selected");
    circle.setAttribute("class", classes.join(" "));
    if (builderTurn) {
      circle.addEventListener("click", () => actions.vertexClick(v.id));
    }
    svg.appendChild(circle);
  }
  return svg;
}

function renderControls(
  snap: Snapshot,
  state: UiState,
  actions: Actions,
  live: boolean,
): HTMLElement {
  const controls = el("div", { "data-testid": "controls", class: "controls" });
  const yourTurn = live && snap.turn === snap.human_role && !state.busy;
  if (snap.human_role === "painter") {
    for (let c = 1; c <= snap.state.q; c++) {
      const btn = el(
        "button",
        { "data-testid": `colour-${c}`, class: "colour-btn" },
        `colour ${c}`,
      );
      btn.style.setProperty("--swatch", edgeStroke(c));
      if (!yourTurn || snap.pending === null) btn.setAttribute("disabled", "");
      btn.addEventListener("click", () => actions.colour(c));
      controls.appendChild(btn);
    }
  } else {
    controls.appendChild(
      el(
        "span",
        { class: "hint" },
        state.selection === null
          ? "Click a vertex to start an edge"
          : `Edge from ${state.selection} — click a second vertex, or`,
      ),
    );
    const fresh = el(
      "button",
      { "data-testid": "new-vertex", class: "colour-btn" },
      snap.state.n === 0 ? "draw the first edge" : "extend to a new vertex",
    );
    if (!yourTurn || (state.selection === null && snap.state.n > 0))
      fresh.setAttribute("disabled", "");
    fresh.addEventListener("click", () => actions.newVertexEdge());
    controls.appendChild(fresh);
  }
  return controls;
}

function renderThreats(vm: ReturnType<typeof buildViewModel>): HTMLElement {
  const box = el("ul", { "data-testid": "threats", class: "threats" });
  for (const t of vm.threats) {
    box.appendChild(
      el(
        "li",
        { "data-colour": String(t.color) },
        `colour ${t.color}: ${t.size} of ${t.goal}`,
      ),
    );
  }
  return box;
}

function renderScrubber(state: UiState, actions: Actions): HTMLElement {
  const row = el("div", { class: "scrub-row" });
  const input = el("input", {
    "data-testid": "scrubber",
    type: "range",
    min: "0",
    max: String(state.history.length - 1),
    value: String(state.viewIndex),
  });
  input.addEventListener("input", () => actions.scrub(Number(input.value)));
  row.appendChild(input);
  row.appendChild(
    el("span", {}, ` move ${state.viewIndex}/${state.history.length - 1}`),
  );
  return row;
}

function renderLog(vm: ReturnType<typeof buildViewModel>): HTMLElement {
  const log = el("ol", { "data-testid": "move-log", class: "move-log" });
  for (const entry of vm.moveLog) log.appendChild(el("li", {}, entry));
  return log;
}

function renderEndScreen(
  snap: Snapshot,
  vm: ReturnType<typeof buildViewModel>,
  actions: Actions,
): HTMLElement {
  const kind = snap.result?.kind ?? "aborted";
  const win =
    (kind === "builder_win" && snap.human_role === "builder") ||
    (kind === "budget_exhausted" && snap.human_role === "painter");
  const screen = el("div", {
    "data-testid": "end-screen",
    class: `end-screen ${win ? "win" : "lose"}`,
  });
  screen.appendChild(el("h2", {}, win ? "You win" : kind === "builder_win" || kind === "budget_exhausted" ? "You lose" : "Game over"));
  screen.appendChild(el("p", {}, vm.banner));
  const again = el("button", { "data-testid": "play-again" }, "New game");
  again.addEventListener("click", () => actions.reset());
  screen.appendChild(again);
  return screen;
}
