/** DOM wiring for the calibration workbench.
 *
 * All state lives in the Store; this module renders it and translates DOM
 * events into API calls. Mutation responses and push-channel events both
 * feed Store.applySnapshot, so whichever arrives first wins and the other
 * is a no-op.
 */

import { ApiClient } from "./api";
import { PushChannel } from "./push";
import { Store, UiState } from "./store";
import { FaceError, renderFace } from "./face";
import { CHANNEL_NAMES } from "./channels";
import { clamp01, Snapshot } from "./types";

/** Motor labels for the 32-DoF head the bundled profile targets. Other
 * profiles fall back to bare indices. */
const MOTOR_LABELS = [
  "brow inner",
  "brow left",
  "brow right",
  "upper lid left",
  "upper lid right",
  "lower lid left",
  "lower lid right",
  "eye yaw left",
  "eye yaw right",
  "eye pitch left",
  "eye pitch right",
  "cheek left",
  "cheek right",
  "corner up left",
  "corner up right",
  "corner down left",
  "corner down right",
  "jaw",
  "upper lip raise",
  "lower lip down",
  "pucker",
  "funnel",
  "stretch left",
  "stretch right",
  "mouth slide",
  "nose wrinkle",
  "brow outer left",
  "brow outer right",
  "lip press",
  "neck yaw",
  "neck pitch",
  "neck roll",
];

const STATUS_TEXT = {
  connecting: "connecting…",
  live: "live",
  lost: "connection lost — retrying",
} as const;

export interface AppDeps {
  root: HTMLElement;
  api: ApiClient;
  push: PushChannel;
  store: Store;
  download?: (filename: string, text: string, doc: Document) => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className = "",
  text = "",
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  if (className) node.className = className;
  if (text) node.textContent = text;
  return node;
}

function saveTextFile(filename: string, text: string, doc: Document): void {
  const url = URL.createObjectURL(new Blob([text], { type: "application/x-yaml" }));
  const a = doc.createElement("a");
  a.href = url;
  a.download = filename;
  doc.body.appendChild(a);
  a.click();
  a.remove();
  URL.revokeObjectURL(url);
}

function errorText(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

/** Build the page inside `root` and start the push channel. Returns a
 * teardown function. */
export function mountApp({
  root,
  api,
  push,
  store,
  download = saveTextFile,
}: AppDeps): () => void {
  const doc = root.ownerDocument;
  root.textContent = "";

  // -- skeleton -----------------------------------------------------------

  const header = el(doc, "header");
  const status = el(doc, "span", "status", STATUS_TEXT.connecting);
  const title = el(doc, "h1", "", "actuator calibration");
  const exportBtn = el(doc, "button", "export", "export profile");
  header.append(status, title, el(doc, "span", "spacer"), exportBtn);

  const banner = el(doc, "div", "banner hidden");

  const facePanel = el(doc, "section", "face-panel");
  const faceBox = el(doc, "div", "face-box");
  const toggle = el(doc, "div", "preview-toggle");
  const manualBtn = el(doc, "button", "", "manual pose");
  const mappedBtn = el(doc, "button", "", "mapped pose");
  toggle.append(manualBtn, mappedBtn);
  facePanel.append(faceBox, toggle);

  const controls = el(doc, "section", "controls");
  const picker = el(doc, "div", "picker");
  const semanticSelect = el(doc, "select");
  const intensityInput = el(doc, "input") as HTMLInputElement;
  intensityInput.type = "number";
  intensityInput.min = "0";
  intensityInput.max = "1";
  intensityInput.step = "0.05";
  const saveBtn = el(doc, "button", "", "save anchor");
  picker.append(
    labeled(doc, "semantic", semanticSelect),
    labeled(doc, "intensity", intensityInput),
    saveBtn,
  );
  const anchorList = el(doc, "ul", "anchors");
  const sliderPanel = el(doc, "div", "sliders");
  controls.append(picker, anchorList, sliderPanel);

  const mainRow = el(doc, "main");
  mainRow.append(facePanel, controls);
  root.append(header, banner, mainRow);

  // -- server plumbing ----------------------------------------------------

  const applySnapshot = (snap: Snapshot): void => {
    store.applySnapshot(snap);
    if (store.state().previewMode === "mapped") void refreshMapped();
  };

  const call = async (fn: () => Promise<Snapshot>): Promise<void> => {
    try {
      const snap = await fn();
      store.setError(null);
      applySnapshot(snap);
    } catch (err) {
      store.setError(errorText(err));
    }
  };

  const refreshMapped = async (): Promise<void> => {
    try {
      const pose = await api.preview({});
      store.setPreviewMode("mapped", pose);
    } catch (err) {
      store.setError(errorText(err));
      store.setPreviewMode("manual");
    }
  };

  // Coalesce slider drags: the store updates instantly, the POST sends the
  // latest value per motor on a short timer.
  const sendQueue = new Map<number, number>();
  let sendTimer: ReturnType<typeof setTimeout> | null = null;
  const flushQueue = (): void => {
    sendTimer = null;
    const entries = [...sendQueue.entries()];
    sendQueue.clear();
    for (const [index, value] of entries) {
      void call(() => api.setActuator(index, value));
    }
  };
  const queueActuator = (index: number, value: number): void => {
    store.optimisticActuator(index, value);
    sendQueue.set(index, value);
    if (sendTimer === null) sendTimer = setTimeout(flushQueue, 40);
  };

  // -- event handlers -----------------------------------------------------

  semanticSelect.addEventListener("change", () => {
    const name = semanticSelect.value;
    if (name) void call(() => api.select(name, store.state().intensity));
  });
  intensityInput.addEventListener("change", () => {
    const sem = store.state().semantic;
    if (!sem) return;
    const v = clamp01(Number(intensityInput.value));
    void call(() => api.select(sem, v));
  });
  saveBtn.addEventListener("click", () => void call(() => api.saveAnchor()));
  exportBtn.addEventListener("click", () => {
    api
      .exportProfile()
      .then((text) => {
        store.setError(null);
        download("profile.yaml", text, doc);
      })
      .catch((err) => store.setError(errorText(err)));
  });
  manualBtn.addEventListener("click", () => store.setPreviewMode("manual"));
  mappedBtn.addEventListener("click", () => void refreshMapped());

  // -- rendering ----------------------------------------------------------

  interface SliderRow {
    range: HTMLInputElement;
    value: HTMLElement;
  }
  let sliderRows: SliderRow[] = [];

  const ensureSliders = (dof: number): void => {
    if (sliderRows.length === dof) return;
    sliderPanel.textContent = "";
    sliderRows = [];
    for (let i = 0; i < dof; i++) {
      const row = el(doc, "div", "slider-row");
      const name = dof === MOTOR_LABELS.length ? MOTOR_LABELS[i] : `motor ${i}`;
      const label = el(doc, "label", "", `${i} · ${name}`);
      const range = el(doc, "input") as HTMLInputElement;
      range.type = "range";
      range.min = "0";
      range.max = "1";
      range.step = "0.001";
      const value = el(doc, "span", "value");
      range.addEventListener("input", () =>
        queueActuator(i, clamp01(Number(range.value))),
      );
      row.append(label, range, value);
      sliderPanel.append(row);
      sliderRows.push({ range, value });
    }
  };

  let optionKey = "";
  const ensureOptions = (state: UiState): void => {
    const mapped = Object.keys(state.anchors).sort();
    const key = mapped.join(",");
    if (key === optionKey) return;
    optionKey = key;
    semanticSelect.textContent = "";
    const placeholder = el(doc, "option", "", "— select semantic —");
    placeholder.value = "";
    placeholder.disabled = true;
    semanticSelect.append(placeholder);
    const seen = new Set<string>();
    for (const name of [...mapped, ...CHANNEL_NAMES]) {
      if (seen.has(name)) continue;
      seen.add(name);
      const opt = el(doc, "option", "", name);
      opt.value = name;
      semanticSelect.append(opt);
    }
  };

  const renderAnchors = (state: UiState): void => {
    anchorList.textContent = "";
    if (!state.semantic) return;
    const list = state.anchors[state.semantic] ?? [];
    for (const anchor of list) {
      const item = el(doc, "li", "anchor", `intensity ${anchor.intensity}`);
      if (anchor.intensity === state.intensity) item.classList.add("current");
      item.addEventListener("click", () => {
        const sem = state.semantic;
        if (sem) void call(() => api.select(sem, anchor.intensity));
      });
      anchorList.append(item);
    }
    if (list.length === 0) {
      anchorList.append(el(doc, "li", "anchor empty", "no anchors yet"));
    }
  };

  const renderFacePanel = (state: UiState): void => {
    const vector =
      state.previewMode === "mapped" ? state.mappedPose : state.actuators;
    if (!vector || vector.length === 0) {
      faceBox.textContent = "";
      faceBox.append(el(doc, "div", "face-empty", "waiting for server…"));
      return;
    }
    try {
      faceBox.innerHTML = renderFace(vector);
    } catch (err) {
      if (!(err instanceof FaceError)) throw err;
      faceBox.textContent = "";
      faceBox.append(el(doc, "div", "banner", errorText(err)));
    }
  };

  const render = (state: UiState): void => {
    status.textContent = STATUS_TEXT[state.connection];
    status.dataset.state = state.connection;
    banner.textContent = state.error ?? "";
    banner.classList.toggle("hidden", state.error === null);

    ensureSliders(state.dof);
    state.actuators.forEach((v, i) => {
      sliderRows[i].range.value = String(v);
      sliderRows[i].value.textContent = v.toFixed(3);
    });

    ensureOptions(state);
    semanticSelect.value = state.semantic ?? "";
    intensityInput.value = String(state.intensity);
    intensityInput.disabled = state.semantic === null;
    saveBtn.disabled = state.semantic === null || state.intensity === 0;
    mappedBtn.disabled = state.semantic === null;
    manualBtn.classList.toggle("active", state.previewMode === "manual");
    mappedBtn.classList.toggle("active", state.previewMode === "mapped");

    renderAnchors(state);
    renderFacePanel(state);
  };

  const unsubscribe = store.subscribe(render);
  render(store.state());

  push.start(applySnapshot, (s) => store.setConnection(s));

  return () => {
    push.stop();
    unsubscribe();
    if (sendTimer !== null) clearTimeout(sendTimer);
  };
}

function labeled(doc: Document, text: string, control: HTMLElement): HTMLElement {
  const wrap = el(doc, "label", "field", "");
  wrap.append(el(doc, "span", "", text), control);
  return wrap;
}
