package main

import "os/exec"

func Hostname() string {
	out, _ := exec.Command("hostname").Output()
	return string(out)
}
