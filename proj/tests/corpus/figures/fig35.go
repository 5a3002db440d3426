sel: = now.Unix()
if time == sel {
    allowSelling(user, prize)
}
