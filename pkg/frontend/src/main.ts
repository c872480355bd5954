import { ApiClient } from "./api.js";
import { TestFlow } from "./controller.js";
import { View } from "./view.js";

// Same-origin when served by the backend at /ui; override for dev setups.
const base = new URLSearchParams(location.search).get("api") ?? "";

const flow = new TestFlow(new ApiClient(base));
const view = new View(document.getElementById("app")!, flow);
view.render();
