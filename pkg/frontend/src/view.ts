import { FlowState, TestFlow } from "./controller.js";
import { groupByAttribute, tokenLabel } from "./vocab.js";
import { ObjectRow, TokenPair } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function objectTable(objects: ObjectRow[]): HTMLTableElement {
  const table = el("table", "objects");
  const head = table.createTHead().insertRow();
  for (const col of ["id", "size", "color", "shape", "material", "x", "y"]) {
    head.appendChild(el("th", undefined, col));
  }
  const body = table.createTBody();
  for (const o of objects) {
    const row = body.insertRow();
    for (const v of [o.id, o.size, o.color, o.shape, o.material, o.x, o.y]) {
      row.insertCell().textContent = String(v);
    }
  }
  return table;
}

function stepsLabel(steps: TokenPair[]): string {
  return steps.map((s) => `(${s.obj}, ${s.value})`).join("  ");
}

export class View {
  private selectedObject: number | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly flow: TestFlow,
  ) {
    flow.onChange(() => this.render());
  }

  render(): void {
    const state = this.flow.getState();
    this.root.replaceChildren();
    if (state.error) {
      const bar = el("div", "error", state.error);
      const retry = el("button", undefined, "retry");
      retry.onclick = () => this.flow.loadNext();
      bar.appendChild(retry);
      this.root.appendChild(bar);
    }
    switch (state.phase) {
      case "idle":
        this.renderStart();
        break;
      case "answering":
        this.renderProblem(state);
        break;
      case "submitted":
        this.renderResult(state);
        break;
      case "report":
        this.renderReport(state);
        break;
    }
  }

  private renderStart(): void {
    const panel = el("div", "panel start");
    panel.appendChild(el("h1", undefined, "transformation test"));
    const user = el("input") as HTMLInputElement;
    user.placeholder = "your name";
    user.id = "user";
    const count = el("input") as HTMLInputElement;
    count.type = "number";
    count.value = "10";
    const practice = el("button", undefined, "practice (solutions shown)");
    practice.onclick = () =>
      this.guard(this.flow.start(user.value || "anonymous", {
        count: Math.max(1, Number(count.value) || 1),
        practice: true,
      }));
    const test = el("button", "primary", "start scored test");
    test.onclick = () =>
      this.guard(this.flow.start(user.value || "anonymous", {
        count: Math.max(1, Number(count.value) || 1),
        practice: false,
      }));
    panel.append(user, count, practice, test);
    this.root.appendChild(panel);
  }

  private renderProblem(state: FlowState): void {
    const current = state.current!;
    const header = el("div", "header",
      `${state.practice ? "practice" : "test"} — sample ${current.index + 1} of ${current.total}`);
    this.root.appendChild(header);

    const scenes = el("div", "scenes");
    for (const [label, svg] of [
      ["initial (center view)", current.initial_svg],
      [`final (${current.sample.view} view)`, current.final_svg],
      ["all initial objects", current.helper_svg],
    ] as const) {
      const box = el("figure", "scene");
      box.innerHTML = svg;
      box.appendChild(el("figcaption", undefined, label));
      scenes.appendChild(box);
    }
    this.root.appendChild(scenes);
    this.root.appendChild(objectTable(current.sample.objects));

    if (current.solution) {
      this.root.appendChild(
        el("div", "solution", `solution: ${stepsLabel(current.solution)}`),
      );
    }

    this.root.appendChild(this.palette(current.sample.objects.length));
    this.root.appendChild(this.draftList());

    const submit = el("button", "primary", "submit answer");
    submit.onclick = () => this.guard(this.flow.submit());
    this.root.appendChild(submit);
  }

  private palette(objectCount: number): HTMLElement {
    const panel = el("div", "palette");
    const objRow = el("div", "palette-row");
    objRow.appendChild(el("span", "palette-label", "object"));
    for (let i = 0; i < objectCount; i++) {
      const b = el("button", this.selectedObject === i ? "selected" : undefined, String(i));
      b.onclick = () => {
        this.selectedObject = i;
        this.render();
      };
      objRow.appendChild(b);
    }
    panel.appendChild(objRow);
    for (const [attr, tokens] of groupByAttribute(this.flow.getState().current!.vocabulary)) {
      const row = el("div", "palette-row");
      row.appendChild(el("span", "palette-label", attr));
      for (const token of tokens) {
        const b = el("button", undefined, tokenLabel(token));
        b.title = token;
        b.onclick = () => {
          if (this.selectedObject === null) {
            this.flash("pick an object id first");
            return;
          }
          const problem = this.flow.draft.validate(this.selectedObject, token);
          if (problem) {
            this.flash(problem);
            return;
          }
          this.flow.draft.add(this.selectedObject, token);
          this.render();
        };
        row.appendChild(b);
      }
      panel.appendChild(row);
    }
    return panel;
  }

  private draftList(): HTMLElement {
    const wrap = el("div", "draft");
    wrap.appendChild(el("h3", undefined, "your answer (ordered)"));
    const list = el("ol", "steps");
    this.flow.draft.items.forEach((step, i) => {
      const item = el("li", "step");
      item.draggable = true;
      item.dataset.index = String(i);
      item.appendChild(el("span", "grip", "⋮⋮"));
      item.appendChild(el("span", undefined, `(${step.obj}, ${step.value})`));
      const up = el("button", undefined, "↑");
      up.onclick = () => {
        this.flow.draft.move(i, i - 1);
        this.render();
      };
      const down = el("button", undefined, "↓");
      down.onclick = () => {
        this.flow.draft.move(i, i + 1);
        this.render();
      };
      const rm = el("button", undefined, "✕");
      rm.onclick = () => {
        this.flow.draft.remove(i);
        this.render();
      };
      item.append(up, down, rm);
      item.ondragstart = (e) => e.dataTransfer?.setData("text/plain", String(i));
      item.ondragover = (e) => e.preventDefault();
      item.ondrop = (e) => {
        e.preventDefault();
        const from = Number(e.dataTransfer?.getData("text/plain"));
        this.flow.draft.move(from, i);
        this.render();
      };
      list.appendChild(item);
    });
    wrap.appendChild(list);
    return wrap;
  }

  private renderResult(state: FlowState): void {
    const result = state.lastResult!;
    const ok = result.score.strict_correct;
    const panel = el("div", `panel result ${ok ? "good" : "bad"}`);
    panel.appendChild(el("h2", undefined, ok ? "correct" : "not quite"));
    panel.appendChild(el("p", "score-line",
      `distance ${result.score.distance} (normalized ${result.score.normalized_distance.toFixed(2)})` +
      ` — strict ${result.score.strict_correct ? "✓" : "✗"}, loose ${result.score.loose_correct ? "✓" : "✗"}`));
    panel.appendChild(el("p", undefined, `reference: ${stepsLabel(result.reference)}`));
    const next = el("button", "primary",
      result.remaining > 0 ? `next sample (${result.remaining} left)` : "view report");
    next.onclick = () => this.guard(this.flow.advance());
    panel.appendChild(next);
    this.root.appendChild(panel);
  }

  private renderReport(state: FlowState): void {
    const report = state.report!;
    const panel = el("div", "panel report");
    panel.appendChild(el("h2", undefined, `results for ${report.user}`));
    if (report.report) {
      const r = report.report;
      panel.appendChild(el("p", "aggregate",
        `Acc ${r.Acc.toFixed(4)} · LAcc ${r.LAcc.toFixed(4)} · EO ${r.EO.toFixed(4)}` +
        ` · AD ${r.AD.toFixed(4)} · AND ${r.AND.toFixed(4)} (${r.count} samples)`));
    }
    const list = el("ol", "history");
    for (const a of report.answers) {
      list.appendChild(el("li", a.score.strict_correct ? "good" : "bad",
        `${a.sample_id}: distance ${a.score.distance}` +
        (a.elapsed_ms != null ? ` in ${(a.elapsed_ms / 1000).toFixed(1)}s` : "")));
    }
    panel.appendChild(list);
    const again = el("button", undefined, "start over");
    again.onclick = () => location.reload();
    panel.appendChild(again);
    this.root.appendChild(panel);
  }

  private flash(message: string): void {
    const note = el("div", "flash", message);
    this.root.prepend(note);
    setTimeout(() => note.remove(), 2500);
  }

  private guard(p: Promise<unknown>): void {
    p.catch((err) => {
      const note = el("div", "error", String(err?.message ?? err));
      const retry = el("button", undefined, "retry");
      retry.onclick = () => this.render();
      note.appendChild(retry);
      this.root.prepend(note);
    });
  }
}
