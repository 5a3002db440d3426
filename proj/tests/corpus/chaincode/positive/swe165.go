package main

func Fanout(items []string) {
	done := make(chan bool)
	for _, it := range items {
		go check(it, done)
	}
}

func check(s string, done chan bool) {
	done <- len(s) > 0
}
