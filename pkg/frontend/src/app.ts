/**
 * Browser entry point: renders the step grid, swing sliders, transport and
 * interpretation picker, and wires them to the engine service.
 */

import { ClickSynth } from "./audio.js";
import { SequencerController } from "./controller.js";
import { EngineClient } from "./engineClient.js";
import { GridViewModel } from "./grid.js";

const ENGINE_URL = (window as { POLYFEEL_URL?: string }).POLYFEEL_URL ?? "http://127.0.0.1:8765";

const grid = new GridViewModel({
  pulsesPerBar: 16,
  tempoBpm: 120,
  bars: 1,
  instruments: [
    { name: "djembe", timbres: ["bass", "tone", "slap"] },
    { name: "clave", timbres: ["stick"] },
  ],
});
const controller = new SequencerController(grid, new EngineClient(ENGINE_URL));
const synth = new ClickSynth();

const root = document.getElementById("app");
if (!root) {
  throw new Error("missing #app container");
}

const status = document.createElement("div");
status.className = "status";
root.appendChild(status);

const gridHost = document.createElement("div");
root.appendChild(gridHost);

const cellButtons: HTMLButtonElement[][][] = [];

function overlayClass(pulse: number): string {
  const signature = grid.signatureOverlay();
  if (!signature) {
    return "";
  }
  return signature[pulse] === 3 ? "triple" : "duple";
}

function redraw(): void {
  const boundaries = new Set(grid.phraseBoundaries());
  grid.instruments.forEach((instrument, i) => {
    instrument.timbres.forEach((_, t) => {
      for (let pulse = 0; pulse < grid.pulsesPerBar; pulse += 1) {
        const button = cellButtons[i]?.[t]?.[pulse];
        if (!button) {
          continue;
        }
        button.classList.toggle("on", grid.cellOn(i, t, pulse));
        button.classList.toggle("phrase-start", i === grid.focusedTrack && boundaries.has(pulse));
        button.classList.remove("duple", "triple");
        const overlay = i === grid.focusedTrack ? overlayClass(pulse) : "";
        if (overlay) {
          button.classList.add(overlay);
        }
        button.classList.toggle(
          "playhead",
          grid.playhead !== null && grid.playhead.pulse === pulse,
        );
      }
    });
  });
  status.textContent = controller.staleOverlay
    ? "analysis pending…"
    : controller.playing
      ? "playing"
      : "ready";
  status.classList.toggle("stale", controller.staleOverlay);
  renderPicker();
}

function buildGrid(): void {
  gridHost.textContent = "";
  grid.instruments.forEach((instrument, i) => {
    const block = document.createElement("div");
    block.className = "instrument";
    const title = document.createElement("h3");
    title.textContent = instrument.name;
    title.onclick = () => {
      grid.focusedTrack = i;
      redraw();
    };
    block.appendChild(title);
    cellButtons[i] = [];
    instrument.timbres.forEach((timbre, t) => {
      const row = document.createElement("div");
      row.className = "row";
      const label = document.createElement("span");
      label.textContent = timbre;
      row.appendChild(label);
      cellButtons[i]![t] = [];
      for (let pulse = 0; pulse < grid.pulsesPerBar; pulse += 1) {
        const button = document.createElement("button");
        button.className = "cell";
        button.onclick = () => {
          controller.toggleCell(i, t, pulse);
          redraw();
        };
        cellButtons[i]![t]![pulse] = button;
        row.appendChild(button);
      }
      block.appendChild(row);
    });
    gridHost.appendChild(block);
  });
}

const picker = document.createElement("select");
picker.className = "picker";
picker.onchange = () => {
  controller.pinInterpretation(grid.focusedTrack, picker.selectedIndex);
  redraw();
};
root.appendChild(picker);

function renderPicker(): void {
  const interpretations = grid.interpretationsFor(grid.focusedTrack).slice(0, 5);
  picker.textContent = "";
  interpretations.forEach((interp, index) => {
    const option = document.createElement("option");
    option.textContent = `#${index + 1} ${interp.signature.join("")} (${interp.score.toFixed(4)})`;
    option.selected = index === grid.selectedInterpretationIndex(grid.focusedTrack);
    picker.appendChild(option);
  });
}

const controls = document.createElement("div");
controls.className = "controls";
root.appendChild(controls);

(["theta1", "theta2", "theta3"] as const).forEach((which) => {
  const label = document.createElement("label");
  label.textContent = which;
  const slider = document.createElement("input");
  slider.type = "range";
  slider.min = "-1.5";
  slider.max = "1.5";
  slider.step = "0.05";
  slider.value = "0";
  slider.oninput = () => {
    void controller.setTheta(which, Number(slider.value));
  };
  label.appendChild(slider);
  controls.appendChild(label);
});

const playButton = document.createElement("button");
playButton.textContent = "play";
playButton.onclick = () => {
  void controller.play().then(redraw);
};
controls.appendChild(playButton);

const stopButton = document.createElement("button");
stopButton.textContent = "stop";
stopButton.onclick = () => {
  void controller.stop().then(redraw);
};
controls.appendChild(stopButton);

controller.onTick = (tick) => {
  for (let i = 0; i < grid.instruments.length; i += 1) {
    grid.instruments[i]!.timbres.forEach((_, t) => {
      if (grid.cellOn(i, t, tick.pulse)) {
        synth.click(t, tick.pulse === 0);
      }
    });
  }
  redraw();
};

buildGrid();
redraw();
