// DOM wiring for the explorer. All numbers shown in badges and tables come
// verbatim from the service response; this layer only formats and draws.

import { EvaluateClient } from "./api.js";
import { buildChartModel } from "./chart.js";
import { comparePanel } from "./compare.js";
import { ExplorerController } from "./controller.js";
import { buildBadges, ExplorerStore, type HistoryEntry } from "./state.js";
import { ZODIAC_DEFAULTS, type ScenarioParams } from "./types.js";

interface SliderDef {
  key: keyof ScenarioParams;
  label: string;
  min: number;
  max: number;
  step: number;
}

const SLIDERS: SliderDef[] = [
  { key: "p1", label: "fatal event probability p1", min: 0.05, max: 0.95, step: 0.01 },
  { key: "p2", label: "non-fatal event probability p2", min: 0.05, max: 0.95, step: 0.01 },
  { key: "hr1", label: "fatal hazard ratio HR1", min: 0.4, max: 1.0, step: 0.01 },
  { key: "hr2", label: "non-fatal hazard ratio HR2", min: 0.4, max: 1.0, step: 0.01 },
  { key: "rho", label: "correlation rho", min: 0.0, max: 0.95, step: 0.05 },
  { key: "alpha", label: "one-sided alpha", min: 0.01, max: 0.2, step: 0.005 },
  { key: "power", label: "power", min: 0.6, max: 0.95, step: 0.01 },
];

const SHAPES = [0.5, 1.0, 2.0];

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function apiBase(): string {
  const override = new URLSearchParams(location.search).get("api");
  if (override) return override.replace(/\/$/, "");
  if (location.origin.startsWith("http")) return location.origin;
  return "http://localhost:8080";
}

const store = new ExplorerStore(ZODIAC_DEFAULTS);
const client = new EvaluateClient(apiBase());
const controller = new ExplorerController(store, client, 250, render, renderPending);
let pinned: HistoryEntry | null = null;

function buildControls(): void {
  const host = el<HTMLDivElement>("controls");
  for (const def of SLIDERS) {
    const wrap = document.createElement("label");
    wrap.className = "control";
    const title = document.createElement("span");
    const value = document.createElement("output");
    const input = document.createElement("input");
    title.textContent = def.label;
    input.type = "range";
    input.min = String(def.min);
    input.max = String(def.max);
    input.step = String(def.step);
    input.value = String(store.params[def.key]);
    value.value = String(store.params[def.key]);
    input.addEventListener("input", () => {
      value.value = input.value;
      controller.setParam(def.key, Number(input.value));
    });
    wrap.append(title, input, value);
    host.append(wrap);
  }
  for (const [key, selectId] of [
    ["shape1", "shape1-select"],
    ["shape2", "shape2-select"],
  ] as const) {
    const select = el<HTMLSelectElement>(selectId);
    for (const shape of SHAPES) {
      const option = document.createElement("option");
      option.value = String(shape);
      option.textContent =
        shape === 1
          ? "constant hazard (1)"
          : shape < 1
            ? "decreasing hazard (0.5)"
            : "increasing hazard (2)";
      select.append(option);
    }
    select.value = String(store.params[key]);
    select.addEventListener("change", () => {
      controller.setParam(key, Number(select.value));
    });
  }
  el<HTMLButtonElement>("pin").addEventListener("click", () => {
    pinned = store.current;
    render();
  });
  el<HTMLButtonElement>("undo").addEventListener("click", () => {
    const previous = store.history[store.history.length - 2];
    if (!previous) return;
    controller.setParams(previous.params);
    syncControlValues();
  });
}

function syncControlValues(): void {
  const host = el<HTMLDivElement>("controls");
  const inputs = host.querySelectorAll<HTMLInputElement>("input[type=range]");
  inputs.forEach((input, i) => {
    const def = SLIDERS[i];
    if (!def) return;
    input.value = String(store.params[def.key]);
    const output = input.parentElement?.querySelector("output");
    if (output) output.value = input.value;
  });
  el<HTMLSelectElement>("shape1-select").value = String(store.params.shape1);
  el<HTMLSelectElement>("shape2-select").value = String(store.params.shape2);
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svgNode(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, val] of Object.entries(attrs)) node.setAttribute(key, String(val));
  return node;
}

function renderChart(): void {
  const svg = el<HTMLElement>("chart");
  svg.replaceChildren();
  if (!store.current) return;
  const model = buildChartModel(store.current.response, 680, 380);
  svg.setAttribute("viewBox", `0 0 ${model.width} ${model.height}`);

  svg.append(
    svgNode("rect", {
      x: model.margin.left,
      width: model.width - model.margin.left - model.margin.right,
      y: model.band.y,
      height: model.band.height,
      class: "band",
    }),
  );

  for (const tick of model.xTicks) {
    svg.append(
      svgNode("line", {
        x1: tick.x,
        x2: tick.x,
        y1: model.height - model.margin.bottom,
        y2: model.margin.top,
        class: "grid",
      }),
    );
    const label = svgNode("text", {
      x: tick.x,
      y: model.height - model.margin.bottom + 16,
      class: "tick",
      "text-anchor": "middle",
    });
    label.textContent = tick.label;
    svg.append(label);
  }
  for (const tick of model.yTicks) {
    const label = svgNode("text", {
      x: model.margin.left - 6,
      y: tick.y + 4,
      class: "tick",
      "text-anchor": "end",
    });
    label.textContent = tick.label;
    svg.append(label);
  }
  for (const tick of model.eventTicks) {
    const label = svgNode("text", {
      x: model.width - model.margin.right + 8,
      y: tick.y + 4,
      class: "tick events",
      "text-anchor": "start",
    });
    label.textContent = tick.label;
    svg.append(label);
  }
  const axisCaption = svgNode("text", {
    x: model.width - 4,
    y: model.margin.top + 4,
    class: "tick events",
    "text-anchor": "end",
  });
  axisCaption.textContent = "events needed";
  svg.append(axisCaption);

  for (const ref of model.refLines) {
    svg.append(
      svgNode("line", {
        x1: model.margin.left,
        x2: model.width - model.margin.right,
        y1: ref.y,
        y2: ref.y,
        class: "refline",
      }),
    );
    const label = svgNode("text", { x: model.margin.left + 4, y: ref.y - 4, class: "tick ref" });
    label.textContent = ref.label;
    svg.append(label);
  }
  svg.append(svgNode("path", { d: model.curvePath, class: "curve" }));
}

function renderBadges(): void {
  if (!store.current) return;
  const badges = buildBadges(store.current.response);
  const dEl = el<HTMLSpanElement>("badge-d");
  const rEl = el<HTMLSpanElement>("badge-r");
  dEl.textContent = badges.d.text;
  dEl.dataset.value = String(badges.d.value);
  rEl.textContent = badges.r.text;
  rEl.dataset.value = String(badges.r.value);
  const warn = el<HTMLSpanElement>("badge-threshold");
  warn.hidden = !badges.thresholdVisible;
  warn.textContent = badges.thresholdText;
  el<HTMLSpanElement>("sizes").textContent =
    `n(average) = ${badges.sampleSizes.n_a ?? "n/a"}   ` +
    `n(minimum detectable) = ${badges.sampleSizes.n_M ?? "n/a"}   ` +
    `increase ${badges.sampleSizes.increase}`;
}

function renderCompare(): void {
  const host = el<HTMLTableSectionElement>("compare-body");
  host.replaceChildren();
  const note = el<HTMLParagraphElement>("compare-note");
  if (!pinned || !store.current) {
    note.textContent = "Pin a state to compare against the live one.";
    return;
  }
  const model = comparePanel(pinned, store.current);
  note.textContent = model.differingParams.length
    ? `inputs differing from the pinned state: ${model.differingParams.join(", ")}`
    : "identical inputs";
  for (const row of model.rows) {
    const tr = document.createElement("tr");
    for (const cell of [
      row.label,
      row.a === null ? "n/a" : String(row.a),
      row.b === null ? "n/a" : String(row.b),
      row.delta === null ? "n/a" : row.delta.toPrecision(3),
    ]) {
      const td = document.createElement("td");
      td.textContent = cell;
      tr.append(td);
    }
    host.append(tr);
  }
}

function renderPending(): void {
  el<HTMLSpanElement>("status").textContent = "computing...";
}

function render(): void {
  el<HTMLSpanElement>("status").textContent = store.lastError
    ? `error - ${store.lastError} (previous result retained)`
    : "";
  renderChart();
  renderBadges();
  renderCompare();
}

buildControls();
void controller.evaluateNow();
void client.health().catch(() => {
  el<HTMLSpanElement>("status").textContent =
    `cannot reach the evaluation service at ${apiBase()} - start it with: cehr serve`;
});
