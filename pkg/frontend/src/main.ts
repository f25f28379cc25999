import { ApiClient } from "./api.js";
import { App } from "./app.js";

window.addEventListener("DOMContentLoaded", () => {
	const root = document.getElementById("app");
	if (!root) {
		throw new Error("missing #app element");
	}
	// same-origin API: built assets are served by `ocpm serve --static`
	void new App(root, new ApiClient("")).boot();
});
