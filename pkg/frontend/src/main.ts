import { ApiClient } from "./api.js";
import { defaultConfig } from "./defaults.js";
import { Panel } from "./panel.js";
import { PanelStore } from "./store.js";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app mount point");
}

// Same-origin service: the panel is served by `evoengine serve --static-dir`.
const store = new PanelStore(new ApiClient(""), defaultConfig());
new Panel(root, store);
void store.refresh();
